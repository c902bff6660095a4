"""Exact minimum set cover by depth-first branch and bound on int bitsets.

Elements are bit positions of a Python int; each candidate set is a mask.
At every node the search branches on the uncovered element that lies in
the fewest candidate sets, trying the sets through it in order of how
much fresh coverage they give.  Two lower bounds prune the tree:

* ``ceil(uncovered / largest set)``;
* a greedy packing: uncovered elements no two of which share a candidate
  set each need their own set.

A transposition table keyed on the uncovered mask discards nodes already
reached at the same or smaller depth.

:func:`milp_cover` solves the same problem as a 0/1 integer program with
HiGHS, and :func:`solve_cover` chooses between the two.
"""

from typing import Callable, List, Optional, Sequence

from coverlab.config import DEFAULT_NODE_BUDGET
from coverlab.errors import CoverError, SearchBudgetExceeded


def greedy_cover(n_elements: int, sets: Sequence[int], start: Sequence[int] = ()) -> List[int]:
    """Indices chosen by the greedy rule, ties to the smallest index.

    The sets in ``start`` are taken first, in the given order.
    """
    full = (1 << n_elements) - 1
    union = 0
    for m in sets:
        union |= m
    if union & full != full:
        raise CoverError("the candidate sets do not cover the universe")
    uncovered = full
    chosen = list(start)
    for i in chosen:
        uncovered &= ~sets[i]
    while uncovered:
        best_i, best_gain = -1, 0
        for i, m in enumerate(sets):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best_i, best_gain = i, gain
        chosen.append(best_i)
        uncovered &= ~sets[best_i]
    return chosen


class _Search:
    def __init__(self, n_elements, sets, node_budget, extra_bound=None):
        self.sets = list(sets)
        self.extra_bound = extra_bound
        self.node_budget = node_budget
        self.nodes = 0
        self.max_size = max(m.bit_count() for m in self.sets)
        # elem_sets[e]: mask over set indices containing e
        self.elem_sets = [0] * n_elements
        self.elem_list = [[] for _ in range(n_elements)]
        for i, m in enumerate(self.sets):
            rest = m
            while rest:
                low = rest & -rest
                e = low.bit_length() - 1
                self.elem_sets[e] |= 1 << i
                self.elem_list[e].append(i)
                rest ^= low
        self.order = sorted(range(n_elements), key=lambda e: (len(self.elem_list[e]), e))
        self.memo = {}
        self.best = None
        self.best_solution = None

    def packing_bound(self, uncovered):
        used = 0
        count = 0
        elem_sets = self.elem_sets
        for e in self.order:
            if uncovered >> e & 1 and not elem_sets[e] & used:
                used |= elem_sets[e]
                count += 1
        return count

    def run(self, uncovered, chosen):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise SearchBudgetExceeded(
                f"branch and bound exceeded its node budget ({self.node_budget})"
            )
        depth = len(chosen)
        if not uncovered:
            if self.best is None or depth < self.best:
                self.best = depth
                self.best_solution = list(chosen)
            return
        best = self.best
        if best is not None:
            remaining = uncovered.bit_count()
            if depth + -(-remaining // self.max_size) >= best:
                return
            if depth + self.packing_bound(uncovered) >= best:
                return
            if self.extra_bound is not None and depth + self.extra_bound(uncovered) >= best:
                return
        prev = self.memo.get(uncovered)
        if prev is not None and prev <= depth:
            return
        self.memo[uncovered] = depth

        for e in self.order:
            if uncovered >> e & 1:
                break
        sets = self.sets
        cands = sorted(self.elem_list[e], key=lambda i: (-(sets[i] & uncovered).bit_count(), i))
        for i in cands:
            chosen.append(i)
            self.run(uncovered & ~sets[i], chosen)
            chosen.pop()
            if self.best is not None and self.best <= self.lower_root:
                return

    lower_root = 0


def min_cover(
    n_elements: int,
    sets: Sequence[int],
    *,
    initial: Optional[Sequence[int]] = None,
    lower: int = 0,
    node_budget: int = DEFAULT_NODE_BUDGET,
    extra_bound: Optional[Callable[[int], int]] = None,
    fixed: Sequence[int] = (),
) -> List[int]:
    """Indices of a minimum family of ``sets`` whose union is all ``n_elements`` bits.

    ``initial`` is a known cover used as the first incumbent (greedy if
    omitted); ``lower`` is a proven lower bound that lets the search stop
    as soon as it is met.  ``extra_bound(uncovered)`` may supply a further
    problem-specific lower bound on the number of sets still needed.
    Sets listed in ``fixed`` are forced into the solution, which is how
    callers break a symmetry of the instance.
    """
    if n_elements < 1:
        raise CoverError("empty universe")
    full = (1 << n_elements) - 1
    sets = [m & full for m in sets]
    fixed = list(dict.fromkeys(fixed))
    if initial is None:
        initial = greedy_cover(n_elements, sets, fixed)
    else:
        union = 0
        for i in initial:
            union |= sets[i]
        if union != full:
            raise CoverError("initial solution is not a cover")
    search = _Search(n_elements, sets, node_budget, extra_bound)
    search.best = len(initial)
    search.best_solution = list(initial)
    start = full
    for i in fixed:
        start &= ~sets[i]
    root = len(fixed) + search.packing_bound(start)
    if extra_bound is not None:
        root = max(root, len(fixed) + extra_bound(start))
    search.lower_root = max(lower, 1, -(-n_elements // search.max_size), root)
    if search.best > search.lower_root:
        search.run(start, list(fixed))
    return sorted(search.best_solution)


SOLVERS = ("auto", "bnb", "milp")


def milp_cover(
    n_elements: int,
    sets: Sequence[int],
    *,
    fixed: Sequence[int] = (),
    lower: int = 0,
    time_limit: Optional[float] = None,
) -> List[int]:
    """The same minimum cover as :func:`min_cover`, solved as a 0/1 program by HiGHS.

    The relative gap is set to 0, so a returned solution is proven optimal;
    it is checked to be a cover before it is returned.
    """
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_matrix

    if n_elements < 1:
        raise CoverError("empty universe")
    full = (1 << n_elements) - 1
    sets = [m & full for m in sets]
    rows, cols = [], []
    for j, m in enumerate(sets):
        rest = m
        while rest:
            low = rest & -rest
            rows.append(low.bit_length() - 1)
            cols.append(j)
            rest ^= low
    if len(set(rows)) < n_elements:
        raise CoverError("the candidate sets do not cover the universe")
    A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n_elements, len(sets)))
    lb = np.zeros(len(sets))
    lb[list(fixed)] = 1
    constraints = [LinearConstraint(A, lb=1, ub=np.inf)]
    if lower > 0:
        constraints.append(LinearConstraint(np.ones((1, len(sets))), lb=lower, ub=np.inf))
    options = {"mip_rel_gap": 0}
    if time_limit is not None:
        options["time_limit"] = time_limit
    res = milp(np.ones(len(sets)), constraints=constraints, integrality=np.ones(len(sets)),
               bounds=Bounds(lb, 1), options=options)
    if res.status != 0:
        raise SearchBudgetExceeded(f"integer program not solved to optimality: {res.message}")
    chosen = [j for j in range(len(sets)) if res.x[j] > 0.5]
    union = 0
    for j in chosen:
        union |= sets[j]
    if union != full:
        raise CoverError("integer program returned a non-cover")
    return chosen


def solve_cover(
    n_elements: int,
    sets: Sequence[int],
    *,
    solver: str = "auto",
    node_budget: int = DEFAULT_NODE_BUDGET,
    **kwargs,
) -> List[int]:
    """Minimum cover by ``solver``: "bnb", "milp", or "auto" (bnb, then milp
    if the node budget runs out)."""
    if solver not in SOLVERS:
        raise CoverError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    if solver == "milp":
        return milp_cover(n_elements, sets, fixed=kwargs.get("fixed", ()),
                          lower=kwargs.get("lower", 0))
    try:
        return min_cover(n_elements, sets, node_budget=node_budget, **kwargs)
    except SearchBudgetExceeded:
        if solver == "bnb":
            raise
    return milp_cover(n_elements, sets, fixed=kwargs.get("fixed", ()), lower=kwargs.get("lower", 0))
