"""Brute-force ambient solver: every partition of the atoms into <= k cells.

Each nonempty subset of atoms is fitted with its optimal single center
once; the best partition into ``j`` blocks is then found by dynamic
programming over subset masks, which considers every set partition. The
optimal partitions are recovered by a bounded backtrack, so all partitions
within tolerance of the optimum are reported.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..errors import BudgetExceededError, ValidationError
from ..measures import DiscreteMeasure
from ..metric import EuclideanSpace, check_exponent
from ..sets import CenterSet
from .cells import exact_exponent, fit_cells
from .solution import DEFAULT_TOL, ClusterSolution, check_k, check_tol, make_solution, optimality_bound

ORACLE_MAX_ATOMS = 12


def _require_euclidean(mu: DiscreteMeasure) -> EuclideanSpace:
    if not isinstance(mu.space, EuclideanSpace):
        raise ValidationError("ambient solvers need a Euclidean space")
    return mu.space


def subset_blocks(X: np.ndarray, w: np.ndarray, p: float):
    """Optimal single-center cost, center and interval flag for every atom subset."""
    a = X.shape[0]
    masks = np.arange(1 << a)
    M = ((masks[:, None] >> np.arange(a)[None, :]) & 1).astype(float)
    centers = np.zeros((1 << a, X.shape[1]))
    costs = np.full(1 << a, np.inf)
    interval = np.zeros(1 << a, dtype=bool)
    if a:
        c, v, iv = fit_cells(X, M[1:] * w[None, :], p)
        centers[1:] = c
        costs[1:] = v
        interval[1:] = iv
    return costs, centers, interval


def _submasks(rest: int):
    s = rest
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & rest


def optimal_partitions(block_cost, best, full: int, nblocks: int, bound: float):
    """Yield every partition of ``full`` into ``nblocks`` blocks with cost <= bound."""

    def rec(mask, j, acc, chosen):
        if j == 1:
            if acc + block_cost[mask] <= bound:
                yield chosen + [mask]
            return
        low = mask & -mask
        rest = mask ^ low
        for s in _submasks(rest):
            blk = low | s
            if blk == mask:
                continue
            if acc + block_cost[blk] + best[j - 2, mask ^ blk] <= bound:
                yield from rec(mask ^ blk, j - 1, acc + block_cost[blk], chosen + [blk])

    yield from rec(full, nblocks, 0.0, [])


def partition_oracle(mu: DiscreteMeasure, k: int, p: float, tol: float = DEFAULT_TOL,
                     max_atoms: int = ORACLE_MAX_ATOMS) -> ClusterSolution:
    """Exact ambient (k,p)-clustering of a small discrete measure."""
    space = _require_euclidean(mu)
    k = check_k(k)
    p = check_exponent(p)
    tol = check_tol(tol)
    a = len(mu)
    if a > max_atoms:
        raise BudgetExceededError(
            f"partition oracle is capped at {max_atoms} atoms, measure has {a}; "
            "use the heuristic solver"
        )
    X = space.coords(mu.atoms)
    w = np.asarray(mu.weights, dtype=float)
    costs, centers, interval = subset_blocks(X, w, p)
    kk = min(k, a)
    best = kernels.mask_partition_dp(costs, a, kk)
    full = (1 << a) - 1
    exact_j = best[:, full]
    per_k = [float(exact_j[: min(j, kk)].min()) for j in range(1, k + 1)]
    value = min(per_k)
    bound = optimality_bound(value, tol)
    sets = []
    any_interval = False
    for j in range(1, kk + 1):
        if exact_j[j - 1] > bound:
            continue
        for blocks in optimal_partitions(costs, best, full, j, bound):
            sets.append(CenterSet.of(space, [centers[b] for b in blocks]))
            any_interval |= bool(interval[blocks].any())
    return make_solution(per_k, sets, k, exact=exact_exponent(p), tol=tol,
                         method="partition-oracle", interval=any_interval, ambient=True)
