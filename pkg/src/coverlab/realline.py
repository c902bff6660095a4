"""Covering R by translates of a finite union of closed intervals.

Everything is exact over the rationals.  A periodic covering is described
by a :class:`RealCoveringCert`: translates of ``base`` by
``offsets + period * Z``.  Its efficiency is ``period / (|offsets| * measure)``,
and any verified certificate is a lower bound on e(S).

Two-interval sets are normalized to ``[0, a] | [a + c, a + c + b]`` with
a >= b (reflecting if needed).  The constructions, with y = c/(a+b) and
z = c/a:

=====  ===========  ==================  ===========================
tag    condition    period              offsets
=====  ===========  ==================  ===========================
I      none         a                   0
II     c <= b       a + 2b + c          0, b
III    none         a + b + c           j(a+b) mod period, j <= ceil(y)
IV     a = b        (ceil(z) + 2)a + c  i*a, i <= ceil(z)
=====  ===========  ==================  ===========================
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, log
from typing import Iterable, List, Optional, Tuple

from coverlab.errors import CoverError, LimitExceeded
from coverlab.sets import ZSet, format_rational, normalize, parse_rational

METHODS = ("I", "II", "III", "IV", "grid")
EXAMPLES = ("ER1", "ER2")


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed intervals [lo, hi] with lo < hi."""

    intervals: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        ivs = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.intervals)
        if not ivs:
            raise CoverError("empty interval union")
        for lo, hi in ivs:
            if not lo < hi:
                raise CoverError(f"interval [{lo}, {hi}] must have lo < hi")
        for (_, h1), (l2, _) in zip(ivs, ivs[1:]):
            if not h1 < l2:
                raise CoverError("intervals must be sorted and disjoint")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_pairs(cls, pairs: Iterable, merge: bool = False) -> "IntervalUnion":
        """Build from (lo, hi) pairs; with ``merge`` overlapping ones are joined."""
        ivs = sorted((Fraction(lo), Fraction(hi)) for lo, hi in pairs)
        if merge:
            out = []
            for lo, hi in ivs:
                if out and lo <= out[-1][1]:
                    out[-1] = (out[-1][0], max(out[-1][1], hi))
                else:
                    out.append((lo, hi))
            ivs = out
        return cls(tuple(ivs))

    @property
    def k(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    @property
    def lengths(self) -> List[Fraction]:
        return [hi - lo for lo, hi in self.intervals]

    def shift(self, t) -> "IntervalUnion":
        return IntervalUnion(tuple((lo + t, hi + t) for lo, hi in self.intervals))

    def reflect(self) -> "IntervalUnion":
        """-S shifted back to start where S starts."""
        lo0, hi0 = self.intervals[0][0], self.intervals[-1][1]
        return IntervalUnion(tuple((lo0 + hi0 - hi, lo0 + hi0 - lo) for lo, hi in reversed(self.intervals)))

    def __str__(self):
        return ";".join(f"{_fmt(lo)},{_fmt(hi)}" for lo, hi in self.intervals)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else format_rational(q)


def parse_intervals(text: str) -> IntervalUnion:
    """Parse ``"0,2;31/10,41/10"``."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise CoverError(f"cannot parse interval {chunk!r}; expected 'lo,hi'")
        pairs.append((parse_rational(parts[0]), parse_rational(parts[1])))
    return IntervalUnion.from_pairs(pairs)


@dataclass(frozen=True)
class RealCoveringCert:
    """Translates of ``base`` by ``offsets + period * Z``."""

    base: IntervalUnion
    period: Fraction
    offsets: Tuple[Fraction, ...]
    method: str

    def __post_init__(self):
        P = Fraction(self.period)
        if P <= 0:
            raise CoverError("period must be positive")
        offs = tuple(sorted(set(Fraction(o) % P for o in self.offsets)))
        if not offs:
            raise CoverError("a certificate needs at least one offset")
        if self.method not in METHODS:
            raise CoverError(f"unknown method tag {self.method!r}")
        object.__setattr__(self, "period", P)
        object.__setattr__(self, "offsets", offs)

    @property
    def efficiency(self) -> Fraction:
        return self.period / (len(self.offsets) * self.base.measure)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "set": str(self.base),
            "period": format_rational(self.period),
            "offsets": [format_rational(o) for o in self.offsets],
            "efficiency": format_rational(self.efficiency),
        }


def verify_interval_covering(S: IntervalUnion, cert: RealCoveringCert) -> bool:
    """True iff translates of S by offsets + period*Z cover [0, period).

    Every translated interval is folded into [0, period] and the pieces are
    swept in order of left endpoint.
    """
    P = cert.period
    pieces = []
    for t in cert.offsets:
        for lo, hi in S.intervals:
            if hi - lo >= P:
                return True
            a = (lo + t) % P
            b = a + (hi - lo)
            if b <= P:
                pieces.append((a, b))
            else:
                pieces.append((a, P))
                pieces.append((Fraction(0), b - P))
    pieces.sort()
    reach = Fraction(0)
    for a, b in pieces:
        if a > reach:
            return False
        reach = max(reach, b)
    return reach >= P


def two_interval_params(S: IntervalUnion) -> Tuple[Fraction, Fraction, Fraction, IntervalUnion]:
    """(a, b, c, S0): lengths a >= b, gap c, and S0 = [0,a] | [a+c, a+c+b]."""
    if S.k != 2:
        raise CoverError(f"expected two intervals, got {S.k}")
    (l1, h1), (l2, h2) = S.intervals
    a, b, c = h1 - l1, h2 - l2, l2 - h1
    if a < b:
        a, b = b, a
    return a, b, c, normalized_pair(a, b, c)


def normalized_pair(a, b, c) -> IntervalUnion:
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return IntervalUnion(((Fraction(0), a), (a + c, a + c + b)))


def two_interval_methods(a, b, c) -> List[RealCoveringCert]:
    """Certificates of the applicable methods among I-IV for lengths a >= b and gap c."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a <= 0 or b <= 0 or c <= 0:
        raise CoverError("interval lengths and gap must be positive")
    if a < b:
        raise CoverError("expected a >= b; swap the intervals first")
    S = normalized_pair(a, b, c)
    certs = [RealCoveringCert(S, a, (Fraction(0),), "I")]
    if c <= b:
        certs.append(RealCoveringCert(S, a + 2 * b + c, (Fraction(0), b), "II"))
    P = a + b + c
    m = ceil(c / (a + b))
    certs.append(RealCoveringCert(S, P, tuple(j * (a + b) for j in range(m + 1)), "III"))
    if a == b:
        m = ceil(c / a)
        certs.append(RealCoveringCert(S, (m + 2) * a + c, tuple(i * a for i in range(m + 1)), "IV"))
    return certs


@dataclass(frozen=True)
class Grid:
    """Cells J_j = [j*delta, (j+1)*delta] inside S; ``U`` is their index set shifted to 0."""

    delta: Fraction
    cells: Tuple[int, ...]
    measure: Fraction

    @property
    def U(self) -> Optional[ZSet]:
        return normalize(self.cells) if self.cells else None


def grid_discretize(S: IntervalUnion, delta) -> Grid:
    delta = Fraction(delta)
    if delta <= 0:
        raise CoverError("delta must be positive")
    cells = []
    for lo, hi in S.intervals:
        cells.extend(range(ceil(lo / delta), floor(hi / delta)))
    return Grid(delta, tuple(cells), len(cells) * delta)


def default_delta(S: IntervalUnion) -> Fraction:
    """lambda(S) / (2k(ceil(log k) + 1))."""
    k = S.k
    return S.measure / (2 * k * (ceil(log(k)) + 1))


def grid_certificate(S: IntervalUnion, delta=None, *, limit=None) -> Optional[RealCoveringCert]:
    """Periodic covering of R from an optimal covering of Z by the grid set U.

    If t + U covers Z then the cells of t + U, hence the translates
    S + t*delta, cover R.  Returns None when no cell fits inside S.
    """
    from coverlab.debruijn import extract_covering

    if delta is None:
        delta = default_delta(S)
    grid = grid_discretize(S, delta)
    if grid.U is None:
        warnings.warn(f"no grid cell of width {grid.delta} lies inside S; grid bound skipped")
        return None
    C = extract_covering(grid.U, limit=limit)
    j0 = min(grid.cells)
    offsets = tuple(((t - j0) % C.period) * grid.delta for t in C.offsets)
    return RealCoveringCert(S, C.period * grid.delta, offsets, "grid")


def single_interval_certificate(S: IntervalUnion) -> RealCoveringCert:
    """Use only a longest interval: efficiency max a_i / lambda(S) >= 1/k."""
    lo, hi = max(S.intervals, key=lambda iv: (iv[1] - iv[0], -iv[0]))
    return RealCoveringCert(S, hi - lo, (-lo,), "I")


def lower_bound_candidates(S: IntervalUnion, delta=None, *, limit=None) -> List[RealCoveringCert]:
    certs = [single_interval_certificate(S)]
    if S.k == 2:
        a, b, c, S0 = two_interval_params(S)
        certs.extend(cert for cert in two_interval_methods(a, b, c) if cert.method != "I")
    try:
        grid = grid_certificate(S, delta, limit=limit)
    except LimitExceeded as exc:
        warnings.warn(f"grid bound skipped: {exc}")
        grid = None
    if grid is not None:
        certs.append(grid)
    return certs


def best_lower_bound(S: IntervalUnion, delta=None, *, limit=None) -> Tuple[Fraction, RealCoveringCert]:
    """Largest certified lower bound on e(S) over all constructions.

    Two-interval certificates live on the normalized copy of S (same
    efficiency as S itself); the others are on S.
    """
    certs = lower_bound_candidates(S, delta, limit=limit)
    best = max(certs, key=lambda cert: cert.efficiency)
    return best.efficiency, best


def example_set(which: str, eps) -> IntervalUnion:
    """ER1: [0,2] | [3+eps, 4+eps];  ER2: [0,1] | [1+eps, 2+eps]."""
    eps = _check_eps(eps)
    if which == "ER1":
        return IntervalUnion(((Fraction(0), Fraction(2)), (3 + eps, 4 + eps)))
    if which == "ER2":
        return IntervalUnion(((Fraction(0), Fraction(1)), (1 + eps, 2 + eps)))
    raise CoverError(f"unknown example {which!r}; expected one of {EXAMPLES}")


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise CoverError("epsilon must be positive")
    return eps


def example_upper_bound(which: str, eps) -> Fraction:
    """(2 + eps)/3 for ER1, (3 + eps)/4 for ER2."""
    eps = _check_eps(eps)
    if which == "ER1":
        return (2 + eps) / 3
    if which == "ER2":
        return (3 + eps) / 4
    raise CoverError(f"unknown example {which!r}; expected one of {EXAMPLES}")


def example_limit(which: str) -> Fraction:
    """The eps -> 0 limit of the example bound: 2/3 for ER1, 3/4 for ER2."""
    if which == "ER1":
        return Fraction(2, 3)
    if which == "ER2":
        return Fraction(3, 4)
    raise CoverError(f"unknown example {which!r}; expected one of {EXAMPLES}")
