class CoverError(ValueError):
    """Invalid input to a covering computation."""


class LimitExceeded(CoverError):
    """An instance is larger than the configured search limit."""


class SearchBudgetExceeded(LimitExceeded):
    """Branch-and-bound ran out of its node budget before proving optimality."""
