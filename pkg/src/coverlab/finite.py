"""Covering numbers in finite abelian groups and of integer intervals.

Groups are products Z_{n_1} x ... x Z_{n_r}; an element is a tuple, and
its canonical index is the mixed-radix number with the first factor most
significant (so for a cyclic group the index is the residue itself).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, List, Optional, Sequence, Tuple

from coverlab import _kernels, setcover
from coverlab.config import DEFAULT_NODE_BUDGET, exact_limit, width_limit
from coverlab.errors import CoverError, LimitExceeded
from coverlab.sets import CyclicSet, ZSet

# density bounds come from the few narrowest forms only
_NU_FORM_WIDTH = 12
_NU_FORM_COUNT = 6
_RUN_BOUND_WIDTH = 16


@dataclass(frozen=True)
class GroupSpec:
    factors: Tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(f) for f in self.factors)
        if not fs:
            raise CoverError("a group needs at least one factor")
        if any(f < 1 for f in fs):
            raise CoverError("group factors must be positive")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls((n,))

    @property
    def order(self) -> int:
        return prod(self.factors)

    def index(self, g: Sequence[int]) -> int:
        i = 0
        for x, f in zip(g, self.factors):
            i = i * f + x % f
        return i

    def element(self, i: int) -> Tuple[int, ...]:
        out = []
        for f in reversed(self.factors):
            out.append(i % f)
            i //= f
        return tuple(reversed(out))

    def add(self, g, h) -> Tuple[int, ...]:
        return tuple((a + b) % f for a, b, f in zip(g, h, self.factors))

    def __str__(self):
        return " x ".join(f"Z_{f}" for f in self.factors)


@dataclass(frozen=True)
class CoverResult:
    """tau translates ``witness`` of S covering the group (or interval)."""

    tau: int
    witness: Tuple = field(repr=False)
    multiplicity: Fraction
    efficiency: Fraction
    exact: bool


def _result(tau, witness, k, order, exact):
    kappa = Fraction(tau * k, order)
    return CoverResult(tau, tuple(witness), kappa, 1 / kappa, exact)


def _group_and_elements(S, G=None):
    """Normalize the accepted set forms to ``(GroupSpec, [tuple, ...])``."""
    if isinstance(S, CyclicSet):
        if G is None:
            G = GroupSpec.cyclic(S.modulus)
        if G.factors != (S.modulus,):
            raise CoverError(f"set lives in Z_{S.modulus}, not in {G}")
        return G, [(r,) for r in S.residues]
    if G is None:
        raise CoverError("a group must be given for a product set")
    elems = sorted({tuple(g[i] % f for i, f in enumerate(G.factors)) for g in S})
    if not elems:
        raise CoverError("empty set")
    if any(len(g) != len(G.factors) for g in S):
        raise CoverError(f"elements must have {len(G.factors)} coordinates")
    return G, elems


def product_set(S1: CyclicSet, S2: CyclicSet):
    """S1 x S2 as a subset of Z_{n1} x Z_{n2}: ``(GroupSpec, elements)``."""
    G = GroupSpec((S1.modulus, S2.modulus))
    return G, [(a, b) for a in S1.residues for b in S2.residues]


def _translate_masks(G, elems):
    masks = []
    for t in range(G.order):
        tg = G.element(t)
        m = 0
        for g in elems:
            m |= 1 << G.index(G.add(tg, g))
        masks.append(m)
    return masks


def _witness(G, indices):
    if len(G.factors) == 1:
        return [i for i in indices]
    return [G.element(i) for i in indices]


def verify_group_cover(G: GroupSpec, elems, witness) -> bool:
    """Count covers of every group element; True iff none is zero."""
    hits = [0] * G.order
    for t in witness:
        tg = (t,) if isinstance(t, int) else tuple(t)
        for g in elems:
            hits[G.index(G.add(tg, g))] += 1
    return all(hits)


def greedy_bound(n: int, k: int) -> int:
    """min{j : n_j = 0} for n_0 = n, n_{j+1} = floor(n_j (1 - k/n))."""
    if not 1 <= k <= n:
        raise CoverError(f"need 1 <= k <= n, got k={k}, n={n}")
    nj, j = n, 0
    while nj:
        nj = nj * (n - k) // n
        j += 1
    return j


def greedy_cover(S, G: Optional[GroupSpec] = None) -> CoverResult:
    """Greedy covering: repeatedly take the translate covering most new points.

    Ties go to the translate with the smallest canonical index.
    """
    G, elems = _group_and_elements(S, G)
    masks = _translate_masks(G, elems)
    chosen = setcover.greedy_cover(G.order, masks)
    return _result(len(chosen), _witness(G, chosen), len(elems), G.order, False)


def _check_size(order, limit):
    cap = exact_limit(limit)
    if order > cap:
        raise LimitExceeded(
            f"instance too large for exact search: |G| = {order} exceeds {cap}"
        )


def exact_cover_group(S, G: Optional[GroupSpec] = None, *, limit=None,
                      node_budget: int = DEFAULT_NODE_BUDGET, lower: int = 0,
                      solver: str = "auto") -> CoverResult:
    """tau(S, G) by an exact search over the translates of S.

    Covers are translation invariant, so the translate by 0 is fixed.
    ``lower`` is a known lower bound on tau that lets the search stop early.
    ``solver`` is passed to :func:`coverlab.setcover.solve_cover`.
    """
    G, elems = _group_and_elements(S, G)
    _check_size(G.order, limit)
    masks = _translate_masks(G, elems)
    chosen = setcover.solve_cover(G.order, masks, solver=solver, fixed=[0], lower=lower,
                                  node_budget=node_budget)
    return _result(len(chosen), _witness(G, chosen), len(elems), G.order, True)


def _ceil(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


def _coset_reduce(S: CyclicSet):
    """``(g, x0, S')`` with S - x0 = g * S' inside the subgroup gZ_n, g maximal."""
    n = S.modulus
    x0 = S.residues[0]
    g = gcd(n, *(x - x0 for x in S.residues))
    return g, x0, CyclicSet(n // g, tuple((x - x0) // g for x in S.residues))


def cyclic_forms(S: CyclicSet, max_diameter: Optional[int] = None):
    """Images c*S - r (c a unit, r in c*S) as ``{ZSet: (c, r)}``.

    Each form has the same covering number in Z_n as S.  Only forms of
    diameter at most ``max_diameter`` are kept.
    """
    n = S.modulus
    out = {}
    for c in range(1, n + 1):
        if gcd(c, n) != 1:
            continue
        image = sorted({(c * x) % n for x in S.residues})
        for r in image:
            Z = ZSet(tuple(sorted((x - r) % n for x in image)))
            if max_diameter is not None and Z.diameter > max_diameter:
                continue
            if Z not in out:
                out[Z] = (c % n, r)
    return out


def _cyclic_masks(n, Z):
    base = Z.mask()
    full = (1 << n) - 1
    return [((base << t) | (base >> (n - t))) & full for t in range(n)]


def _longest_run(mask, n):
    # longest cyclic run of consecutive set bits
    full = (1 << n) - 1
    if mask == full:
        return n
    x, run = mask, 0
    while x:
        x &= (x >> 1) | ((x & 1) << (n - 1))
        run += 1
    return run


def exact_cover_cyclic(S: CyclicSet, G: Optional[GroupSpec] = None, *, limit=None,
                       node_budget: int = DEFAULT_NODE_BUDGET, lower: int = 0,
                       solver: str = "auto") -> CoverResult:
    """tau(S, Z_n) by an exact search (see :func:`exact_cover_group` for ``solver``).

    If S lies in a coset of a proper subgroup the problem splits over its
    cosets.  Otherwise the search runs on the image of S of least diameter
    under the maps x -> c*x - r (c a unit mod n).  Two lower bounds come from S viewed in
    Z: n * nu(S') <= tau for every image S' (periodic extension), and a
    run of w uncovered residues needs at least tau(S', min(w, n - d))
    further translates.  ``lower`` is an extra known lower bound on tau.
    """
    if G is not None and G.factors != (S.modulus,):
        raise CoverError(f"set lives in Z_{S.modulus}, not in {G}")
    n = S.modulus
    _check_size(n, limit)
    g, x0, sub = _coset_reduce(S)
    if g > 1:
        # S - x0 lies in the subgroup gZ_n; cover each of its g cosets alike
        inner = exact_cover_cyclic(sub, node_budget=node_budget, limit=max(n, 1),
                                   lower=-(-lower // g), solver=solver)
        witness = sorted((g * t - x0 + c) % n for t in inner.witness for c in range(g))
        return _result(len(witness), witness, S.size, n, True)
    forms = cyclic_forms(S)
    Z = min(forms, key=lambda z: (z.diameter, z.elements))
    c, r = forms[Z]
    d = Z.diameter

    from coverlab.debruijn import covering_density

    narrow = sorted((F for F in forms if F.diameter <= _NU_FORM_WIDTH),
                    key=lambda z: (z.diameter, z.elements))
    for F in narrow[:_NU_FORM_COUNT]:
        nu = covering_density(F, limit=_NU_FORM_WIDTH).nu
        lower = max(lower, -(-n * nu.numerator // nu.denominator))

    extra = None
    if 0 < d <= _RUN_BOUND_WIDTH:
        taus = interval_taus(Z, n - d)
        lower = max(lower, taus[n - d])

        def extra(uncovered):
            return int(taus[min(_longest_run(uncovered, n), n - d)])

    masks = _cyclic_masks(n, Z)
    chosen = setcover.solve_cover(
        n, masks, solver=solver, fixed=[0], lower=lower, node_budget=node_budget,
        extra_bound=extra,
    )
    # T' + (c*S - r) = Z_n  =>  c^-1 (T' - r) + S = Z_n
    cinv = pow(c, -1, n) if n > 1 else 0
    witness = sorted(((t - r) * cinv) % n for t in chosen)
    return _result(len(witness), witness, S.size, n, True)


def _interval_dp(S: ZSet, n: int, limit=None):
    cap = width_limit(limit)
    if S.diameter > cap:
        raise LimitExceeded(
            f"diameter {S.diameter} exceeds the frontier width limit {cap}"
        )
    smask = 0
    for x in S.elements[1:]:
        smask |= 1 << (x - 1)
    return _kernels.interval_frontier(S.diameter, smask, n)


def interval_taus(S: ZSet, n_max: int, *, limit=None) -> List[int]:
    """[tau(S, 0), tau(S, 1), ..., tau(S, n_max)] from one frontier pass."""
    if n_max < 0:
        raise CoverError("interval length must be non-negative")
    taus, _ = _interval_dp(S, n_max, limit)
    return [int(t) for t in taus]


def exact_cover_interval(S: ZSet, n: int, method: str = "dp", *, limit=None,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> CoverResult:
    """tau(S, n): fewest translates t + S, t in Z, whose union contains {1..n}.

    ``method="dp"`` uses the frontier dynamic program, ``"bnb"`` runs
    branch and bound over the translates t in [1 - diam S, n].
    """
    if n < 1:
        raise CoverError("interval length must be positive")
    d = S.diameter
    if method == "dp":
        taus, placed = _interval_dp(S, n, limit)
        witness = [j - d + 1 for j in range(len(placed)) if placed[j]]
        tau = int(taus[n])
    elif method == "bnb":
        starts = list(range(1 - d, n + 1))
        masks = []
        for t in starts:
            m = 0
            for x in S.elements:
                if 1 <= t + x <= n:
                    m |= 1 << (t + x - 1)
            masks.append(m)
        chosen = setcover.min_cover(n, masks, node_budget=node_budget)
        witness = [starts[i] for i in chosen]
        tau = len(witness)
    else:
        raise CoverError(f"unknown method {method!r}; expected 'dp' or 'bnb'")
    return _result(tau, witness, S.size, n, True)


def verify_interval_cover(S: ZSet, n: int, witness: Iterable[int]) -> bool:
    covered = set()
    for t in witness:
        covered.update(t + x for x in S.elements)
    return all(p in covered for p in range(1, n + 1))


@dataclass(frozen=True)
class ProductCover:
    tau: int
    lower: Fraction
    upper: int
    result: CoverResult


def product_cover(S1: CyclicSet, S2: CyclicSet, *, limit=None,
                  node_budget: int = DEFAULT_NODE_BUDGET, solver: str = "auto") -> ProductCover:
    """Exact tau of S1 x S2 with the bounds max(k1, k2)|G|/|S| and tau1 * tau2.

    A factor lying in a coset of a subgroup gZ_n splits the problem into
    g alike pieces, so the search runs on the reduced factors.
    """
    G, elems = product_set(S1, S2)
    _check_size(G.order, limit)
    r1 = exact_cover_cyclic(S1, limit=limit, node_budget=node_budget, solver=solver)
    r2 = exact_cover_cyclic(S2, limit=limit, node_budget=node_budget, solver=solver)
    lower = max(r1.multiplicity, r2.multiplicity) * Fraction(G.order, len(elems))

    n1, n2 = S1.modulus, S2.modulus
    if gcd(n1, n2) == 1:
        # Z_n1 x Z_n2 is cyclic; x <-> (x mod n1, x mod n2)
        N = n1 * n2
        u1 = n2 * pow(n2, -1, n1) if n1 > 1 else 0
        u2 = n1 * pow(n1, -1, n2) if n2 > 1 else 0
        image = CyclicSet(N, tuple(sorted((a * u1 + b * u2) % N for a, b in elems)))
        inner = exact_cover_cyclic(image, limit=limit, node_budget=node_budget,
                                   lower=_ceil(lower), solver=solver)
        witness = sorted((t % n1, t % n2) for t in inner.witness)
    else:
        g1, x1, T1 = _coset_reduce(S1)
        g2, x2, T2 = _coset_reduce(S2)
        H, helems = product_set(T1, T2)
        # the bound holds for the reduced factors too, with tau(Ti) = tau(Si) / gi
        hlower = max(r1.multiplicity, r2.multiplicity) * Fraction(H.order, len(helems))
        inner = exact_cover_group(helems, H, limit=limit, node_budget=node_budget,
                                  lower=_ceil(hlower), solver=solver)
        witness = sorted(
            ((g1 * a - x1 + c1) % n1, (g2 * b - x2 + c2) % n2)
            for a, b in inner.witness for c1 in range(g1) for c2 in range(g2)
        )
    res = _result(len(witness), witness, len(elems), G.order, True)
    return ProductCover(res.tau, lower, r1.tau * r2.tau, res)
