from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coverlab import CoverError, LimitExceeded
from coverlab.randomlab import (
    ExperimentSpec,
    SplitMix64,
    efficiency_experiment,
    log_regime,
    mix64,
    sample_subset,
    summarize,
    Trial,
)
from coverlab.sets import CyclicSet, harmonic


def test_splitmix_reference_values():
    # published SplitMix64 outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]
    assert mix64(0) == 0


def test_trial_streams_are_independent_of_order():
    a = SplitMix64.for_trial(7, 3).next()
    assert a == SplitMix64.for_trial(7, 3).next()
    assert a != SplitMix64.for_trial(7, 4).next()


@given(st.integers(1, 60), st.data(), st.integers(0, 2 ** 64 - 1))
def test_sample_subset_shape(n, data, seed):
    k = data.draw(st.integers(1, n))
    S = sample_subset(n, k, SplitMix64(seed))
    assert S.size == k and S.modulus == n


def test_sample_subset_rejects_bad_sizes():
    with pytest.raises(CoverError):
        sample_subset(5, 6, SplitMix64(0))
    with pytest.raises(CoverError):
        sample_subset(0, 0, SplitMix64(0))


def test_log_regime():
    assert [log_regime(k) for k in (8, 12, 16)] == [16, 29, 44]


def test_spec_validation():
    with pytest.raises(CoverError):
        ExperimentSpec(10, 3, 5, mode="fast")
    with pytest.raises(CoverError):
        ExperimentSpec(10, 11, 5)
    with pytest.raises(CoverError):
        ExperimentSpec(10, 3, 0)
    with pytest.raises(CoverError):
        ExperimentSpec(10, 3, 5, solver="simplex")
    with pytest.raises(LimitExceeded):
        ExperimentSpec(500, 3, 5)
    ExperimentSpec(500, 3, 5, mode="greedy")


def test_full_set_has_multiplicity_one():
    r = efficiency_experiment(ExperimentSpec(7, 7, 3, seed=5))
    assert r.mean_kappa == 1 and r.fraction_efficient == 1 and r.censored == 0


def test_greedy_never_exceeds_harmonic_bound():
    for n, k in [(20, 3), (30, 5), (44, 16)]:
        r = efficiency_experiment(ExperimentSpec(n, k, 40, mode="greedy", seed=3))
        assert r.max_kappa <= harmonic(k)


def test_exact_is_at_most_greedy():
    exact = efficiency_experiment(ExperimentSpec(24, 4, 20, seed=9))
    greedy = efficiency_experiment(ExperimentSpec(24, 4, 20, mode="greedy", seed=9))
    for a, b in zip(exact.trials, greedy.trials):
        assert a.subset == b.subset
        assert a.tau <= b.tau


def test_reports_identical_across_runs_and_workers():
    spec = ExperimentSpec(29, 12, 12, seed=11)
    a = efficiency_experiment(spec)
    assert efficiency_experiment(spec) == a
    assert efficiency_experiment(spec, workers=2) == a


def test_censored_trials_are_excluded():
    spec = ExperimentSpec(10, 2, 3)
    S = CyclicSet(10, (0, 1))
    trials = [
        Trial(0, S, 5, Fraction(1)),
        Trial(1, S, None, None, True),
        Trial(2, S, 6, Fraction(6, 5)),
    ]
    r = summarize(spec, trials)
    assert r.censored == 1
    assert r.mean_kappa == Fraction(11, 10)
    assert r.fraction_efficient == Fraction(1, 2)


def test_tiny_budget_censors_branch_and_bound():
    r = efficiency_experiment(ExperimentSpec(80, 3, 20, seed=1, node_budget=1, solver="bnb"))
    assert r.censored > 0
    assert r.censored + len(r.kappas) == 20


def test_auto_solver_falls_back_instead_of_censoring():
    spec = ExperimentSpec(40, 3, 10, seed=1, node_budget=1)
    r = efficiency_experiment(spec)
    assert r.censored == 0
    exact = efficiency_experiment(ExperimentSpec(40, 3, 10, seed=1))
    assert [t.tau for t in r.trials] == [t.tau for t in exact.trials]


def test_frozen_regression_value():
    # recorded once with this exact configuration; guards against drift
    r = efficiency_experiment(ExperimentSpec(40, 3, 200, seed=1, node_budget=300_000))
    assert r.censored == 0
    assert r.fraction_efficient == Fraction(13, 200)
