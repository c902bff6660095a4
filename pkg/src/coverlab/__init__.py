"""Covering numbers, densities and efficiencies of translates of finite sets.

Covers subsets of Z, Z_n and small products of cyclic groups, plus
covering-efficiency bounds for finite unions of intervals in R.
"""

from coverlab.errors import CoverError, LimitExceeded, SearchBudgetExceeded
from coverlab.sets import CyclicSet, ZSet, embed_cyclic, normalize, parse_set

__version__ = "0.1.0"

__all__ = [
    "CoverError",
    "CyclicSet",
    "LimitExceeded",
    "SearchBudgetExceeded",
    "ZSet",
    "embed_cyclic",
    "normalize",
    "parse_set",
]
