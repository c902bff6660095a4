from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coverlab import CoverError
from coverlab.debruijn import covering_density
from coverlab.realline import (
    IntervalUnion,
    RealCoveringCert,
    best_lower_bound,
    example_limit,
    example_set,
    example_upper_bound,
    grid_certificate,
    grid_discretize,
    parse_intervals,
    single_interval_certificate,
    two_interval_methods,
    two_interval_params,
    verify_interval_covering,
)
from coverlab.sets import normalize

F = Fraction
positive = st.fractions(min_value=F(1, 20), max_value=F(20), max_denominator=30)


def test_parse_and_format():
    S = parse_intervals("0,2; 31/10,41/10")
    assert S.k == 2 and S.measure == 3
    assert str(S) == "0,2;31/10,41/10"
    with pytest.raises(CoverError):
        parse_intervals("0,2;1,3")
    with pytest.raises(CoverError):
        parse_intervals("2,2")
    with pytest.raises(CoverError):
        parse_intervals("0;1")
    merged = IntervalUnion.from_pairs([(0, 2), (1, 3)], merge=True)
    assert merged.intervals == ((0, 3),)


def test_verifier_detects_gaps():
    S = IntervalUnion(((F(0), F(1)),))
    assert verify_interval_covering(S, RealCoveringCert(S, F(1), (F(0),), "I"))
    assert not verify_interval_covering(S, RealCoveringCert(S, F(11, 10), (F(0),), "I"))
    assert verify_interval_covering(S, RealCoveringCert(S, F(2), (F(0), F(1)), "I"))
    assert not verify_interval_covering(S, RealCoveringCert(S, F(2), (F(0), F(1, 2)), "I"))
    # wrap-around pieces
    assert verify_interval_covering(S, RealCoveringCert(S, F(1), (F(1, 2),), "I"))
    T = IntervalUnion(((F(0), F(1)), (F(3), F(4))))
    assert verify_interval_covering(T, RealCoveringCert(T, F(2), (F(1, 3),), "I"))
    assert not verify_interval_covering(T, RealCoveringCert(T, F(5, 2), (F(1, 3),), "I"))


def test_two_interval_example_methods():
    certs = {c.method: c for c in two_interval_methods(1, 1, F(1, 2))}
    assert set(certs) == {"I", "II", "III", "IV"}
    assert certs["II"].period == F(7, 2) and certs["II"].efficiency == F(7, 8)
    assert certs["IV"].efficiency == F(7, 8)
    for c in certs.values():
        assert verify_interval_covering(c.base, c)


def test_two_interval_params_reflect():
    a, b, c, S0 = two_interval_params(parse_intervals("0,1;2,5"))
    assert (a, b, c) == (3, 1, 1)
    assert S0.intervals == ((0, 3), (4, 5))
    with pytest.raises(CoverError):
        two_interval_methods(1, 2, 1)


@given(positive, positive, positive)
def test_two_interval_bounds(x, y, c):
    a, b = max(x, y), min(x, y)
    certs = two_interval_methods(a, b, c)
    for cert in certs:
        assert verify_interval_covering(cert.base, cert)
    best = max(cert.efficiency for cert in certs)
    assert best > F(2, 3)


@given(positive, positive)
def test_equal_lengths_beat_three_quarters(a, c):
    certs = two_interval_methods(a, a, c)
    assert max(cert.efficiency for cert in certs) > F(3, 4)


def test_single_interval_certificate():
    S = parse_intervals("0,1;2,5;7,8")
    cert = single_interval_certificate(S)
    assert cert.efficiency == F(3, 5)
    assert verify_interval_covering(S, cert)


def test_grid_discretize():
    g = grid_discretize(parse_intervals("0,2;3,4"), 1)
    assert g.cells == (0, 1, 3) and g.measure == 3
    assert g.U == normalize([0, 1, 3])
    assert grid_discretize(parse_intervals("0,1/2"), 1).U is None


def test_grid_at_unit_delta_reproduces_the_integer_set():
    # cells of [0,2] | [3,4] at delta 1 form {0,1,3}, whose efficiency is 5/6
    S = parse_intervals("0,2;3,4")
    cert = grid_certificate(S, 1)
    assert verify_interval_covering(S, cert)
    assert cert.efficiency == covering_density(normalize([0, 1, 3])).efficiency == F(5, 6)


def test_grid_certificate_on_three_intervals():
    S = parse_intervals("0,1;3/2,5/2;4,9/2")
    cert = grid_certificate(S, F(1, 2))
    assert cert.efficiency == covering_density(normalize([0, 1, 3, 4, 8])).efficiency
    assert verify_interval_covering(S, cert)
    with pytest.warns(UserWarning):
        assert grid_certificate(parse_intervals("0,1/10;1,11/10"), 1) is None


@pytest.mark.parametrize("eps", [F(1, 10), F(1, 100)])
def test_examples(eps):
    for which, lo in [("ER1", F(2, 3)), ("ER2", F(3, 4))]:
        S = example_set(which, eps)
        bound, cert = best_lower_bound(S)
        assert verify_interval_covering(cert.base, cert)
        assert lo < bound <= example_upper_bound(which, eps)
        assert example_limit(which) == lo


def test_example_values():
    assert example_upper_bound("ER1", F(1, 10)) == F(7, 10)
    assert example_upper_bound("ER2", F(1, 10)) == F(31, 40)
    assert best_lower_bound(example_set("ER1", F(1, 10)))[0] == F(41, 60)
    assert best_lower_bound(example_set("ER2", F(1, 10)))[0] == F(31, 40)
    with pytest.raises(CoverError):
        example_set("ER3", 1)
    with pytest.raises(CoverError):
        example_upper_bound("ER1", 0)
