"""Exact ambient clustering on the real line.

For p >= 1 the per-cell cost is convex, so some optimal assignment uses
contiguous runs of the sorted atoms; a dynamic program over run
boundaries gives the exact value in O(k a^2) once the a x a table of run
costs is known.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..errors import ValidationError
from ..measures import DiscreteMeasure
from ..metric import EuclideanSpace, check_exponent
from ..sets import CenterSet
from .cells import MEDIAN_RTOL, exact_exponent, fit_cell
from .solution import DEFAULT_TOL, ClusterSolution, check_k, check_tol, make_solution, optimality_bound


def run_costs(x: np.ndarray, w: np.ndarray, p: float) -> np.ndarray:
    """``C[i, l]``: least single-center cost of sorted atoms ``i..l``."""
    a = len(x)
    C = np.full((a, a), np.inf)
    iu, lu = np.triu_indices(a)
    if p == 2.0:
        xs = x - np.dot(w, x) / w.sum()
        W = np.concatenate([[0.0], np.cumsum(w)])
        S1 = np.concatenate([[0.0], np.cumsum(w * xs)])
        S2 = np.concatenate([[0.0], np.cumsum(w * xs * xs)])
        tw = W[lu + 1] - W[iu]
        s1 = S1[lu + 1] - S1[iu]
        s2 = S2[lu + 1] - S2[iu]
        C[iu, lu] = np.maximum(s2 - s1 * s1 / tw, 0.0)
    elif p == 1.0:
        W = np.concatenate([[0.0], np.cumsum(w)])
        WX = np.concatenate([[0.0], np.cumsum(w * x)])
        tw = W[lu + 1] - W[iu]
        target = W[iu] + 0.5 * tw - MEDIAN_RTOL * tw
        t = np.searchsorted(W[1:], target, side="left")
        t = np.clip(t, iu, lu)
        xt = x[t]
        left = xt * (W[t + 1] - W[iu]) - (WX[t + 1] - WX[iu])
        right = (WX[lu + 1] - WX[t + 1]) - xt * (W[lu + 1] - W[t + 1])
        C[iu, lu] = np.maximum(left + right, 0.0)
    else:
        X = x[:, None]
        for i, l in zip(iu, lu):
            C[i, l] = fit_cell(X[i : l + 1], w[i : l + 1], p)[1]
    C[np.arange(a), np.arange(a)] = 0.0
    return C


def optimal_runs(C: np.ndarray, F: np.ndarray, a: int, j: int, bound: float):
    """Yield every split of atoms ``0..a-1`` into ``j`` runs with cost <= bound."""

    def rec(i, j, acc, cuts):
        if j == 0:
            if i == 0:
                yield list(reversed(cuts))
            return
        for s in range(j - 1, i):
            v = acc + C[s, i - 1]
            if v + F[j - 1, s] <= bound:
                yield from rec(s, j - 1, v, cuts + [(s, i)])

    yield from rec(a, j, 0.0, [])


def kmeans_1d_dp(mu: DiscreteMeasure, k: int, p: float, tol: float = DEFAULT_TOL) -> ClusterSolution:
    """Exact ambient (k,p)-clustering of a measure on the real line."""
    if not isinstance(mu.space, EuclideanSpace) or mu.space.dim != 1:
        raise ValidationError("kmeans_1d_dp needs a measure on one-dimensional Euclidean space")
    k = check_k(k)
    p = check_exponent(p)
    tol = check_tol(tol)
    x = np.array([a[0] for a in mu.atoms])
    w = np.asarray(mu.weights, dtype=float)
    a = len(x)
    C = run_costs(x, w, p)
    kk = min(k, a)
    F = kernels.interval_dp(C, kk)
    exact_j = F[1:, a]
    per_k = [float(exact_j[: min(j, kk)].min()) for j in range(1, k + 1)]
    value = min(per_k)
    bound = optimality_bound(value, tol)
    X = x[:, None]
    sets = []
    any_interval = False
    for j in range(1, kk + 1):
        if exact_j[j - 1] > bound:
            continue
        for runs in optimal_runs(C, F, a, j, bound):
            centers = []
            for s, e in runs:
                c, _, iv = fit_cell(X[s:e], w[s:e], p)
                centers.append(c)
                any_interval |= iv
            sets.append(CenterSet.of(mu.space, centers))
    return make_solution(per_k, sets, k, exact=exact_exponent(p), tol=tol,
                         method="interval-dp", interval=any_interval, ambient=True)
