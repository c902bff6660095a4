"""Size limits for the exponential searches.

The defaults can be overridden per call, or globally through the
environment (``COVER_EXACT_LIMIT`` for the exact set-cover group size,
``COVER_WIDTH_LIMIT`` for the frontier width, i.e. the diameter of S).
"""

import os

DEFAULT_EXACT_LIMIT = 128
DEFAULT_WIDTH_LIMIT = 24
DEFAULT_NODE_BUDGET = 2_000_000


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def exact_limit(override=None):
    """Largest group order accepted by exact branch-and-bound."""
    if override is not None:
        return override
    return _env_int("COVER_EXACT_LIMIT", DEFAULT_EXACT_LIMIT)


def width_limit(override=None):
    """Largest diameter accepted by the frontier graphs and DP."""
    if override is not None:
        return override
    return _env_int("COVER_WIDTH_LIMIT", DEFAULT_WIDTH_LIMIT)
