"""Seeded experiments on the covering efficiency of random k-subsets of Z_n.

Generator
---------
SplitMix64 on a 64-bit state x (all arithmetic mod 2**64)::

    x  <- x + 0x9E3779B97F4A7C15
    z  <- x
    z  <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z  <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)

Trial i (counting from 0) of an experiment with seed s starts from the
state ``mix(s + (i + 1) * 0x9E3779B97F4A7C15)`` where ``mix`` is the
output function above applied to its argument, so trials are independent
of one another and of the order in which they run.

Sampling
--------
Selection sampling: scan j = 0 .. n-1 and keep j when
``(u * (n - j)) >> 64 < k - chosen`` for a fresh 64-bit draw u, i.e. with
probability (k - chosen) / (n - j) up to a 2**-64 rounding.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import floor, log
from typing import Optional, Tuple

from coverlab.config import DEFAULT_NODE_BUDGET, exact_limit
from coverlab.errors import CoverError, LimitExceeded, SearchBudgetExceeded
from coverlab.finite import exact_cover_cyclic, greedy_cover
from coverlab.sets import CyclicSet
from coverlab.setcover import SOLVERS

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MODES = ("exact", "greedy")


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    @classmethod
    def for_trial(cls, seed: int, index: int) -> "SplitMix64":
        return cls(mix64(seed + (index + 1) * GOLDEN))


def sample_subset(n: int, k: int, rng: SplitMix64) -> CyclicSet:
    """A uniform k-subset of Z_n by selection sampling."""
    if n < 1:
        raise CoverError("modulus must be positive")
    if not 1 <= k <= n:
        raise CoverError(f"need 1 <= k <= n, got k={k}, n={n}")
    chosen = []
    for j in range(n):
        need = k - len(chosen)
        if need == 0:
            break
        if (rng.next() * (n - j)) >> 64 < need:
            chosen.append(j)
    return CyclicSet(n, tuple(chosen))


def log_regime(k: int) -> int:
    """n = floor(k log k), the group order of the random bad set regime."""
    return floor(k * log(k))


@dataclass(frozen=True)
class ExperimentSpec:
    n: int
    k: int
    trials: int
    mode: str = "exact"
    seed: int = 0
    threshold: Fraction = Fraction(9, 10)
    node_budget: int = DEFAULT_NODE_BUDGET
    solver: str = "auto"

    def __post_init__(self):
        if self.n < 1:
            raise CoverError("n must be positive")
        if not 1 <= self.k <= self.n:
            raise CoverError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.trials < 1:
            raise CoverError("trials must be positive")
        if self.mode not in MODES:
            raise CoverError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.solver not in SOLVERS:
            raise CoverError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if self.mode == "exact" and self.n > exact_limit():
            raise LimitExceeded(
                f"instance too large for exact search: n = {self.n} exceeds {exact_limit()}"
            )
        object.__setattr__(self, "threshold", Fraction(self.threshold))
        object.__setattr__(self, "seed", int(self.seed) & MASK64)


@dataclass(frozen=True)
class Trial:
    index: int
    subset: CyclicSet
    tau: Optional[int]
    kappa: Optional[Fraction]
    censored: bool = False


@dataclass(frozen=True)
class ExperimentReport:
    """Summary of an experiment; censored trials carry no kappa.

    Statistics are over the uncensored trials.  ``fraction_efficient`` is
    the share of them with e = 1/kappa >= threshold.
    """

    spec: ExperimentSpec
    trials: Tuple[Trial, ...]
    mean_kappa: Optional[Fraction]
    min_kappa: Optional[Fraction]
    max_kappa: Optional[Fraction]
    fraction_efficient: Optional[Fraction]
    censored: int

    @property
    def kappas(self):
        return [t.kappa for t in self.trials if not t.censored]


def run_trial(spec: ExperimentSpec, index: int) -> Trial:
    S = sample_subset(spec.n, spec.k, SplitMix64.for_trial(spec.seed, index))
    if spec.mode == "greedy":
        res = greedy_cover(S)
    else:
        try:
            res = exact_cover_cyclic(S, node_budget=spec.node_budget, solver=spec.solver)
        except SearchBudgetExceeded:
            return Trial(index, S, None, None, True)
    return Trial(index, S, res.tau, res.multiplicity)


def _run_trial(args):
    return run_trial(*args)


def summarize(spec: ExperimentSpec, trials) -> ExperimentReport:
    trials = tuple(sorted(trials, key=lambda t: t.index))
    kappas = [t.kappa for t in trials if not t.censored]
    censored = len(trials) - len(kappas)
    if not kappas:
        return ExperimentReport(spec, trials, None, None, None, None, censored)
    good = sum(1 for q in kappas if 1 / q >= spec.threshold)
    return ExperimentReport(
        spec,
        trials,
        sum(kappas, Fraction(0)) / len(kappas),
        min(kappas),
        max(kappas),
        Fraction(good, len(kappas)),
        censored,
    )


def efficiency_experiment(spec: ExperimentSpec, *, workers: int = 1) -> ExperimentReport:
    """Sample ``spec.trials`` subsets and measure kappa(S, Z_n) for each.

    The report depends only on ``spec``: trials are seeded by index and
    collected in index order whatever the number of workers.
    """
    jobs = [(spec, i) for i in range(spec.trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(_run_trial, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        trials = [run_trial(*job) for job in jobs]
    return summarize(spec, trials)


def spec_dict(spec: ExperimentSpec) -> dict:
    out = asdict(spec)
    out["threshold"] = f"{spec.threshold.numerator}/{spec.threshold.denominator}"
    return out
