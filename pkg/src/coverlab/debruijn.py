"""Covering density of a finite S in Z via minimum cycle means.

Two weighted digraphs on frontier states of width s = diam(S) are
supported.  In both, walking one step advances the current position by
one; an edge of weight 1 places a translate of S at the new position and
an edge of weight 0 does not (allowed only if the new position is
already covered).

``"gs"``
    A state is the set A of the last s placement offsets, a subset of
    {1..s}.  From A there is a weight-0 edge to ``(A - 1) minus {0}`` when
    s + 1 lies in A + S, and always a weight-1 edge to that set plus {s}.
    All 2**s states are used.

``"gs-reduced"``
    A state is the set B of the next s positions already covered.  From B
    there is a weight-0 edge to ``(B - 1) & [s]`` when 1 is in B, and a
    weight-1 edge to ``((B - 1) & [s]) | (S minus {0})``.  Only states
    reachable from the all-covered state are built.

Every cycle of either graph unrolls into a periodic covering of Z with
density weight/length, and every periodic covering gives a closed walk.
So the covering density nu(S) is the minimum cycle mean (Karp), and the
least period of an optimal covering is the length of the shortest cycle
attaining it, found as the girth of the zero-reduced-cost subgraph.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import List, Tuple

import numpy as np

from coverlab import _kernels
from coverlab.config import width_limit
from coverlab.errors import CoverError, LimitExceeded
from coverlab.sets import ZSet

VARIANTS = ("gs", "gs-reduced")
DEFAULT_VARIANT = "gs-reduced"


@dataclass(frozen=True, eq=False)
class CoverGraph:
    base: ZSet
    variant: str
    codes: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray

    @property
    def width(self) -> int:
        return self.base.diameter

    @property
    def num_states(self) -> int:
        return int(self.codes.size)

    @property
    def num_edges(self) -> int:
        return int(self.src.size)

    def successors(self, code: int) -> List[Tuple[int, int]]:
        """``(next_code, weight)`` pairs leaving the state ``code``."""
        return _successors(self.base, self.variant, code)


def _successors(S, variant, code):
    s = S.diameter
    out = []
    if variant == "gs":
        need = _placement_need(S)
        top = 1 << (s - 1) if s else 0
        if code & need:
            out.append((code >> 1, 0))
        out.append(((code >> 1) | top, 1))
    else:
        if code & 1:
            out.append((code >> 1, 0))
        out.append(((code >> 1) | _coverage_mask(S), 1))
    return out


def _coverage_mask(S):
    m = 0
    for x in S.elements[1:]:
        m |= 1 << (x - 1)
    return m


def _placement_need(S):
    # bit i-1 <=> placement offset i reaches position s + 1
    s = S.diameter
    m = 0
    for x in S.elements[1:]:
        m |= 1 << (s - x)
    return m


def _check_variant(variant):
    if variant not in VARIANTS:
        raise CoverError(f"unknown graph variant {variant!r}; expected one of {VARIANTS}")


def _check_width(S, limit):
    cap = width_limit(limit)
    if S.diameter > cap:
        raise LimitExceeded(
            f"diameter {S.diameter} exceeds the frontier width limit {cap}"
        )


def build_graph(S: ZSet, variant: str = DEFAULT_VARIANT, *, limit=None) -> CoverGraph:
    _check_variant(variant)
    _check_width(S, limit)
    s = S.diameter
    if variant == "gs-reduced":
        codes, src, dst, wt = _kernels.reduced_reachable(s, _coverage_mask(S))
        return CoverGraph(S, variant, codes, src, dst, wt.astype(np.int64))

    codes = np.arange(1 << s, dtype=np.int64)
    need = _placement_need(S)
    top = (1 << (s - 1)) if s else 0
    zero_ok = (codes & need) != 0
    idx = codes.astype(np.int32)
    src = np.concatenate([idx[zero_ok], idx])
    dst = np.concatenate([(codes >> 1)[zero_ok], (codes >> 1) | top]).astype(np.int32)
    wt = np.concatenate([np.zeros(int(zero_ok.sum()), np.int64), np.ones(codes.size, np.int64)])
    return CoverGraph(S, variant, codes, src, dst, wt)


def min_cycle_mean(graph: CoverGraph) -> Fraction:
    num, den = _kernels.karp_min_mean(graph.num_states, graph.src, graph.dst, graph.weight)
    if num < 0:
        raise CoverError("graph has no cycle")
    return Fraction(int(num), int(den))


def shortest_mean_cycle(graph: CoverGraph, mean: Fraction):
    """Shortest cycle whose mean weight equals ``mean`` (the minimum).

    Returns ``(codes, weights)`` listing the states visited and the edge
    weights taken, both of length equal to the cycle length.
    """
    p, q = mean.numerator, mean.denominator
    dist, ok = _kernels.potentials(graph.num_states, graph.src, graph.dst, graph.weight, p, q)
    if not ok:
        raise CoverError(f"a cycle of mean below {mean} exists")
    length, edges = _kernels.tight_girth(
        graph.num_states, graph.src, graph.dst, graph.weight, dist, p, q
    )
    if length == 0:
        raise CoverError(f"no cycle attains mean {mean}")
    codes = tuple(int(graph.codes[graph.src[e]]) for e in edges)
    weights = tuple(int(graph.weight[e]) for e in edges)
    return codes, weights


@dataclass(frozen=True)
class Density:
    """Covering density nu(S) with the derived multiplicity and efficiency."""

    nu: Fraction
    kappa: Fraction
    efficiency: Fraction


@dataclass(frozen=True)
class Cycle:
    """A closed walk in a frontier graph: visited states and edge weights."""

    variant: str
    states: Tuple[int, ...]
    weights: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.weights)

    @property
    def mean(self) -> Fraction:
        return Fraction(sum(self.weights), len(self.weights))


@dataclass(frozen=True)
class PeriodicCovering:
    """T = offsets + period*Z, claimed to satisfy T + base = Z."""

    base: ZSet
    period: int
    offsets: Tuple[int, ...]

    def __post_init__(self):
        if self.period < 1:
            raise CoverError("period must be positive")
        offs = tuple(sorted(set(int(o) for o in self.offsets)))
        if any(o < 0 or o >= self.period for o in offs):
            raise CoverError(f"offsets must lie in [0, {self.period})")
        object.__setattr__(self, "offsets", offs)

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.offsets), self.period)


def _graph(S, variant):
    return build_graph(S, variant, limit=max(S.diameter, 1))


@lru_cache(maxsize=8192)
def _nu(S: ZSet, variant: str) -> Fraction:
    # a set inside gZ covers each coset of gZ like S/g covers Z
    g = gcd(*S.elements)
    if g > 1:
        return _nu(ZSet(tuple(x // g for x in S.elements)), variant)
    return min_cycle_mean(_graph(S, variant))


@lru_cache(maxsize=4096)
def _cycle(S: ZSet, variant: str) -> Cycle:
    nu = _nu(S, variant)
    codes, weights = shortest_mean_cycle(_graph(S, variant), nu)
    return Cycle(variant, codes, weights)


def _checked(S, variant, limit):
    _check_variant(variant)
    _check_width(S, limit)


def covering_density(S: ZSet, variant: str = DEFAULT_VARIANT, *, limit=None) -> Density:
    """nu(S) exactly, with kappa = nu * |S| and efficiency 1 / kappa."""
    _checked(S, variant, limit)
    nu = _nu(S, variant)
    kappa = nu * S.size
    return Density(nu, kappa, 1 / kappa)


def minimal_period(S: ZSet, variant: str = DEFAULT_VARIANT, *, limit=None) -> Tuple[int, Cycle]:
    """Least period of an optimal periodic covering, with a cycle attaining it."""
    _checked(S, variant, limit)
    cycle = _cycle(S, variant)
    return cycle.length, cycle


def extract_covering(S: ZSet, variant: str = DEFAULT_VARIANT, *, limit=None) -> PeriodicCovering:
    """An optimal periodic covering of least period, read off the tight cycle."""
    _checked(S, variant, limit)
    cycle = _cycle(S, variant)
    placed = [i for i, w in enumerate(cycle.weights) if w == 1]
    first = placed[0]
    offsets = tuple((i - first) % cycle.length for i in placed)
    return PeriodicCovering(S, cycle.length, offsets)


def verify_covering(S: ZSet, C: PeriodicCovering) -> Tuple[bool, Fraction]:
    """Check offsets + period*Z + S covers Z, residue by residue.

    Returns ``(covers, multiplicity)`` where multiplicity is the average
    number of times a point is covered, ``density * |S|``.
    """
    ell = C.period
    hit = bytearray(ell)
    for t in C.offsets:
        for x in S.elements:
            hit[(t + x) % ell] = 1
    return all(hit), C.density * S.size


def period_bound(S: ZSet, nu: Fraction) -> int:
    """min(2**s, 2 * #{subsets of [s] with at most 2*s*nu elements})."""
    s = S.diameter
    cap = 2 * s * nu
    tail = sum(comb(s, t) for t in range(s + 1) if t <= cap)
    return min(2 ** s, 2 * tail)
