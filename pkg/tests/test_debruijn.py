from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given, settings, strategies as st

from coverlab import CoverError, LimitExceeded, ZSet, embed_cyclic, normalize
from coverlab.debruijn import (
    VARIANTS,
    PeriodicCovering,
    build_graph,
    covering_density,
    extract_covering,
    minimal_period,
    period_bound,
    verify_covering,
)
from coverlab.finite import exact_cover_cyclic, interval_taus
from coverlab.sets import harmonic

zsets = st.lists(st.integers(0, 9), min_size=1, max_size=6).map(normalize)


@pytest.mark.parametrize(
    "S, nu, eff",
    [
        ((0, 1, 3), Fraction(2, 5), Fraction(5, 6)),
        ((0, 1), Fraction(1, 2), Fraction(1)),
        ((0, 1, 2, 4), Fraction(1, 3), Fraction(3, 4)),
        ((0,), Fraction(1), Fraction(1)),
    ],
)
def test_density_examples(S, nu, eff):
    for variant in VARIANTS:
        d = covering_density(ZSet(S), variant)
        assert d.nu == nu and d.efficiency == eff and d.kappa == nu * len(S)


@pytest.mark.parametrize("S, ell", [((0, 1, 3), 5), ((0, 2), 4), ((0, 1, 4, 6), 13), ((0,), 1)])
def test_period_examples(S, ell):
    for variant in VARIANTS:
        got, cycle = minimal_period(ZSet(S), variant)
        assert got == ell and cycle.length == ell
        assert cycle.mean == covering_density(ZSet(S)).nu


def test_extract_examples():
    C = extract_covering(ZSet((0, 1)))
    assert (C.period, C.offsets) == (2, (0,))
    C = extract_covering(ZSet((0, 2)))
    assert C.period == 4 and C.density == Fraction(1, 2)
    C = extract_covering(ZSet((0, 1, 3)))
    assert C.period == 5 and len(C.offsets) == 2 and C.density == Fraction(2, 5)


def test_verify_examples():
    assert verify_covering(ZSet((0, 1)), PeriodicCovering(ZSet((0, 1)), 2, (0,))) == (True, 1)
    S = ZSet((0, 1, 3))
    assert verify_covering(S, PeriodicCovering(S, 5, (0, 1))) == (True, Fraction(6, 5))
    S = ZSet((0, 2))
    assert verify_covering(S, PeriodicCovering(S, 4, (0,)))[0] is False


def test_width_limit(monkeypatch):
    with pytest.raises(LimitExceeded):
        covering_density(ZSet((0, 25)))
    monkeypatch.setenv("COVER_WIDTH_LIMIT", "5")
    with pytest.raises(LimitExceeded):
        minimal_period(ZSet((0, 6)))
    assert minimal_period(ZSet((0, 6)), limit=6)[0] == 4
    with pytest.raises(CoverError):
        covering_density(ZSet((0, 1)), "other")


def test_graph_shapes():
    S = ZSet((0, 1, 3))
    g = build_graph(S, "gs")
    assert g.num_states == 8
    # weight-1 edges from every state, weight-0 only when s + 1 is reached
    assert int((g.weight == 1).sum()) == 8
    for code in range(8):
        succ = dict((w, t) for t, w in g.successors(code))
        assert succ[1] == (code >> 1) | 0b100
        assert (0 in succ) == bool(code & 0b101)
    r = build_graph(S, "gs-reduced")
    assert r.codes[0] == 0b111 and r.num_states <= 8


@settings(max_examples=200)
@given(zsets)
def test_variants_agree(S):
    a = covering_density(S, "gs")
    b = covering_density(S, "gs-reduced")
    assert a == b
    assert minimal_period(S, "gs")[0] == minimal_period(S, "gs-reduced")[0]


@settings(max_examples=200)
@given(zsets)
def test_density_bounds(S):
    d = covering_density(S)
    assert Fraction(1, S.size) <= d.nu <= 1
    assert d.kappa <= harmonic(S.size)
    ell, _ = minimal_period(S)
    assert ell <= period_bound(S, d.nu) <= 2 ** S.diameter or S.diameter == 0


@settings(max_examples=150)
@given(zsets)
def test_extracted_covering_verifies(S):
    C = extract_covering(S)
    ok, mult = verify_covering(S, C)
    assert ok and mult == covering_density(S).kappa
    assert C.period == minimal_period(S)[0]


@settings(max_examples=100)
@given(st.lists(st.integers(0, 7), min_size=1, max_size=5).map(normalize), st.sampled_from([2, 3]))
def test_reflection_and_dilation_invariance(S, c):
    nu = covering_density(S).nu
    assert covering_density(S.reflect()).nu == nu
    assert covering_density(S.dilate(c)).nu == nu


@settings(max_examples=100)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=4).map(normalize))
def test_windows_approach_density(S):
    nu = covering_density(S).nu
    taus = interval_taus(S, 60)
    # tau(S, L) >= L nu on every window, and the ratio tends to nu
    assert all(taus[L] >= L * nu for L in range(61))
    d = S.diameter
    gaps = []
    for n in range(d + 1, 10 * max(d, 1) + 1):
        tau = exact_cover_cyclic(embed_cyclic(S, n)).tau
        assert Fraction(tau, n) >= nu
        gaps.append(Fraction(tau, n) - nu)
    ell = minimal_period(S)[0]
    if any(n % ell == 0 for n in range(d + 1, 10 * max(d, 1) + 1)):
        assert min(gaps) == 0


@pytest.mark.parametrize("a", range(1, 9))
def test_two_element_sets_tile(a):
    assert covering_density(ZSet((0, a))).efficiency == 1


@settings(max_examples=100)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=4).map(normalize), st.integers(1, 12))
def test_cyclic_multiplicity_near_density(S, extra):
    n = S.diameter + extra
    kappa_n = exact_cover_cyclic(embed_cyclic(S, n)).multiplicity
    assert kappa_n <= Fraction(n + S.diameter, n) * covering_density(S).kappa
