"""Multi-restart alternating minimisation for ambient Euclidean problems.

This is a heuristic: it returns the best local optimum found. When the
instance is small enough for the partition oracle, the oracle is run as
well and its exact answer is returned (``exact=True``).
"""

from __future__ import annotations

import logging

import numpy as np

from ..measures import DiscreteMeasure
from ..metric import check_exponent
from ..sets import CenterSet
from .cells import fit_cell
from .oracle import ORACLE_MAX_ATOMS, _require_euclidean, partition_oracle
from .solution import (
    ABS_TOL,
    DEFAULT_TOL,
    ClusterSolution,
    check_k,
    check_tol,
    make_solution,
    optimality_bound,
)

log = logging.getLogger(__name__)

MAX_ITER = 1000
COST_ATOL = 1e-12


def _sorted_centers(C: np.ndarray) -> np.ndarray:
    order = np.lexsort(C.T[::-1])
    return C[order]


def lloyd_run(X: np.ndarray, w: np.ndarray, init: np.ndarray, p: float, max_iter: int = MAX_ITER):
    """One alternating-minimisation run from ``init``; returns ``(centers, cost)``."""
    C = _sorted_centers(np.array(init, dtype=float))
    best_C, best = C, np.inf
    for _ in range(max_iter):
        D = np.sqrt(((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2))
        # np.argmin keeps the first minimum: ties go to the lowest canonical index
        lab = np.argmin(D, axis=1)
        cost = float(np.dot(w, D[np.arange(len(X)), lab] ** p))
        improved = best - cost
        if cost < best:
            best_C, best = C, cost
        if improved < COST_ATOL:
            break
        new = []
        for j in range(C.shape[0]):
            sel = lab == j
            if sel.any():
                new.append(fit_cell(X[sel], w[sel], p)[0])
        C = _sorted_centers(np.array(new))
    return best_C, best


def _best_of_restarts(X, w, k, p, restarts, rng):
    a = X.shape[0]
    kk = min(k, a)
    results = []
    for _ in range(restarts):
        init = X[rng.choice(a, size=kk, replace=False)]
        results.append(lloyd_run(X, w, init, p))
    return results


def solve_ambient(mu: DiscreteMeasure, k: int, p: float, restarts: int = 16, seed: int = 0,
                  tol: float = DEFAULT_TOL, confirm: bool = True,
                  oracle_max_atoms: int = ORACLE_MAX_ATOMS) -> ClusterSolution:
    """Best-of-restarts Lloyd iteration with random atoms as starting centers.

    ``per_k_values`` holds the heuristic value for each ``j <= k`` (made
    nonincreasing). With ``confirm`` and at most ``oracle_max_atoms``
    atoms the partition oracle's solution is returned instead.
    """
    space = _require_euclidean(mu)
    k = check_k(k)
    p = check_exponent(p)
    tol = check_tol(tol)
    if int(restarts) < 1:
        raise ValueError("restarts must be >= 1")
    X = space.coords(mu.atoms)
    w = np.asarray(mu.weights, dtype=float)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), k]))

    per_k = []
    final = []
    for j in range(1, k + 1):
        runs = _best_of_restarts(X, w, j, p, int(restarts), rng)
        per_k.append(min(c for _, c in runs))
        if j == k:
            final = runs
    value = min(per_k)
    bound = optimality_bound(value, tol)
    sets = [CenterSet.of(space, C) for C, c in final if c <= bound]
    if not sets:
        # the best value came from a smaller j; keep that run's centers
        runs = _best_of_restarts(X, w, int(np.argmin(per_k)) + 1, p, int(restarts), rng)
        sets = [CenterSet.of(space, min(runs, key=lambda r: r[1])[0])]
    heuristic = make_solution(per_k, sets, k, exact=False, tol=tol, method="lloyd",
                              complete=False, ambient=True)

    if confirm and len(mu) <= oracle_max_atoms:
        exact = partition_oracle(mu, k, p, tol)
        if heuristic.value <= optimality_bound(exact.value, tol) + ABS_TOL:
            return exact
        log.warning("heuristic value %.12g above oracle value %.12g; returning oracle solution",
                    heuristic.value, exact.value)
        return ClusterSolution(**{**exact.__dict__, "notes": (f"heuristic value {heuristic.value!r}",)})
    return heuristic
