"""Exhaustive sweeps over small sets: longest minimal periods and least efficiencies.

Candidates of diameter d are the sets {0} | M | {d} with M a subset of
[1, d-1], encoded by the bitmask of M.  Since the quantities are
invariant under x -> d - x, only the lexicographically smaller of a set
and its reflection is evaluated (unless ``dedupe=False``).

For parallel or batch runs the masks of each diameter are cut into
``shards`` contiguous ranges by their top bits; a shard's result is the
best set it saw per diameter, and shard results merge with an
associative, commutative rule (best value, then lexicographically
smallest witness), so the rows never depend on the schedule.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Tuple, Union

from coverlab.debruijn import covering_density, minimal_period, period_bound
from coverlab.errors import CoverError, LimitExceeded
from coverlab.sets import ZSet, harmonic

DEFAULT_SWEEP_LIMIT = 10
DEFAULT_SWEEP_LIMIT_K = 13
TABLE_ALPHA_DIAMETER = 22
# desk-scale default diameters for alpha_upper, by k
DESK_ALPHA_DIAMETER = {2: 8, 3: 12, 4: 10, 5: 9, 6: 9}
DEFAULT_ALPHA_COST = 10 ** 11

Value = Union[int, Fraction]


@dataclass(frozen=True)
class SweepRow:
    """One table row.

    For period sweeps with fixed k, ``value`` is what the table prints:
    the maximum over sets of diameter exactly s when that is smaller than
    the maximum over all diameters up to s (then ``bracketed`` is set), and
    the latter otherwise.  ``unrestricted`` always holds the maximum over
    diameters up to s with its own witness.
    """

    parameter: Tuple[int, ...]
    value: Value
    witness: ZSet
    bracketed: bool = False
    unrestricted: Optional[Value] = None
    unrestricted_witness: Optional[ZSet] = None


# a "best" is (value, witness) or None; ``sign`` is +1 to maximize, -1 to minimize
def _better(a, b, sign):
    if a is None:
        return b
    if b is None:
        return a
    if a[0] != b[0]:
        return a if (a[0] - b[0]) * sign > 0 else b
    return a if a[1].elements <= b[1].elements else b


def merge_maxima(parts: Iterable[Dict[int, tuple]], sign: int = 1) -> Dict[int, tuple]:
    """Combine per-diameter bests from several shards."""
    out = {}
    for part in parts:
        for d, best in part.items():
            out[d] = _better(out.get(d), best, sign)
    return out


def _candidates(d, k, shard, shards):
    """Sets of diameter exactly d (and size k if given) in one shard."""
    if d == 0:
        if k in (None, 1) and shard == 0:
            yield ZSet((0,))
        return
    inner = d - 1
    if k is None:
        lo = (shard << inner) // shards
        hi = ((shard + 1) << inner) // shards
        for m in range(lo, hi):
            yield ZSet((0,) + tuple(i for i in range(1, d) if m >> (i - 1) & 1) + (d,))
        return
    if k < 2:
        return
    # combinations come out in lexicographic order; shard by position
    total = comb(inner, k - 2)
    lo = total * shard // shards
    hi = total * (shard + 1) // shards
    for j, mid in enumerate(combinations(range(1, d), k - 2)):
        if j >= hi:
            break
        if j >= lo:
            yield ZSet((0,) + mid + (d,))


def _check_invariants(S, ell=None):
    dens = covering_density(S)
    if dens.kappa > harmonic(S.size):
        raise CoverError(f"multiplicity {dens.kappa} of {S} exceeds H_{S.size}")
    if ell is not None and ell > period_bound(S, dens.nu):
        raise CoverError(f"period {ell} of {S} exceeds the period bound")


def _scan(task):
    kind, d, k, shard, shards, dedupe, check = task
    best = None
    sign = 1 if kind == "period" else -1
    for S in _candidates(d, k, shard, shards):
        if dedupe and S.reflect().elements < S.elements:
            continue
        if kind == "period":
            value = minimal_period(S)[0]
            if check:
                _check_invariants(S, value)
        else:
            value = covering_density(S).efficiency
            if check:
                _check_invariants(S)
        best = _better(best, (value, S), sign)
    return d, best


def _run_tasks(tasks, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, tasks))
    else:
        results = [_scan(t) for t in tasks]
    return results


def diameter_bests(kind: str, d_max: int, k: Optional[int] = None, *, shards: int = 1,
                   shard: Optional[int] = None, dedupe: bool = True, check: bool = False,
                   workers: int = 1) -> Dict[int, tuple]:
    """Best (value, witness) for each diameter 0..d_max.

    ``kind`` is ``"period"`` (maximize the minimal period) or
    ``"efficiency"`` (minimize e(S)).  With ``shard`` set only that shard
    is scanned; otherwise all shards are scanned and merged.
    """
    if kind not in ("period", "efficiency"):
        raise CoverError(f"unknown sweep kind {kind!r}")
    if shards < 1:
        raise CoverError("shards must be positive")
    if shard is not None and not 0 <= shard < shards:
        raise CoverError(f"shard must lie in [0, {shards})")
    wanted = range(shards) if shard is None else [shard]
    tasks = [(kind, d, k, i, shards, dedupe, check) for d in range(d_max + 1) for i in wanted]
    sign = 1 if kind == "period" else -1
    parts = [{d: best} for d, best in _run_tasks(tasks, workers)]
    return merge_maxima(parts, sign)


def _limit_check(s_max, limit, what):
    if s_max < 0:
        raise CoverError("s_max must be non-negative")
    if s_max > limit:
        raise LimitExceeded(
            f"{what} up to s={s_max} exceeds the sweep limit {limit}; raise the "
            "limit, or split the work with shards and merge the results"
        )


def period_rows(bests: Dict[int, tuple], s_max: int, k: Optional[int] = None) -> List[SweepRow]:
    """Turn per-diameter maxima into table rows (running max over s)."""
    rows = []
    running = None
    for s in range(s_max + 1):
        here = bests.get(s)
        running = _better(running, here, 1)
        if running is None:
            continue
        param = (s,) if k is None else (s, k)
        if k is not None and here is not None and here[0] < running[0]:
            rows.append(SweepRow(param, here[0], here[1], True, running[0], running[1]))
        else:
            rows.append(SweepRow(param, running[0], running[1], False, running[0], running[1]))
    return rows


def sweep_period(s_max: int, *, limit: Optional[int] = None, workers: int = 1,
                 shards: int = 1, dedupe: bool = True, check: bool = False) -> List[SweepRow]:
    """l(s) = max{l(S) : S in [0, s]} for s = 0..s_max."""
    _limit_check(s_max, DEFAULT_SWEEP_LIMIT if limit is None else limit, "period sweep")
    bests = diameter_bests("period", s_max, shards=shards, dedupe=dedupe,
                           check=check, workers=workers)
    return period_rows(bests, s_max)


def sweep_period_k(s_max: int, k: int, *, limit: Optional[int] = None, workers: int = 1,
                   shards: int = 1, dedupe: bool = True, check: bool = False) -> List[SweepRow]:
    """l(s, k) for s = k-1..s_max, with bracketed diameter-s values."""
    if k < 1:
        raise CoverError("k must be positive")
    if limit is None:
        limit = DEFAULT_SWEEP_LIMIT_K if k <= 4 else DEFAULT_SWEEP_LIMIT
    _limit_check(s_max, limit, f"period sweep for k={k}")
    bests = diameter_bests("period", s_max, k, shards=shards, dedupe=dedupe,
                           check=check, workers=workers)
    return period_rows(bests, s_max, k)


def alpha_cost(k: int, D: int) -> int:
    """Crude upper estimate of the work in alpha_upper(k, D).

    Each candidate of diameter d costs at most about (2**d) * (2**(d+1))
    edge relaxations in Karp's algorithm on the full state graph.
    """
    if k == 1:
        return 1
    return sum(comb(d - 1, k - 2) * 2 ** (2 * d + 1) for d in range(1, D + 1)) // 2 + 1


def alpha_upper(k: int, D: Optional[int] = None, *, max_cost: int = DEFAULT_ALPHA_COST,
                workers: int = 1, shards: int = 1, check: bool = False) -> SweepRow:
    """min e(S) over k-subsets S of [0, D]; an upper bound on alpha_k."""
    if k < 1:
        raise CoverError("k must be positive")
    if D is None:
        D = DESK_ALPHA_DIAMETER.get(k, 8)
    if D < k - 1:
        raise CoverError(f"[0, {D}] has no {k}-element subsets")
    cost = alpha_cost(k, D)
    if cost > max_cost:
        raise LimitExceeded(
            f"alpha sweep for k={k}, D={D} is estimated at {cost:.2e} operations, "
            f"above the cap {max_cost:.2e}"
        )
    bests = diameter_bests("efficiency", D, k, shards=shards, check=check, workers=workers)
    best = None
    for b in bests.values():
        best = _better(best, b, -1)
    return SweepRow((k, D), best[0], best[1])
