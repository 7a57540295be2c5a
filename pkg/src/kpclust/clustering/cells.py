"""Optimal single center of a weighted cell of Euclidean atoms.

The batch routine :func:`fit_cells` takes one weight row per cell (zero
weight means the atom is not in the cell) so the partition oracle can fit
every subset of atoms in one vectorised call. The Lloyd heuristic and the
1-D dynamic program use the same routine on single cells, so all three
solvers agree on per-cell values to rounding.

* ``p == 2``: weighted mean.
* ``p == 1``, one dimension: weighted median. When the half-mass point
  falls between two atoms every point of the gap is optimal; the midpoint
  is returned and the cell is flagged.
* ``p == 1``, several dimensions: geometric median. An atom is returned
  when it satisfies the subgradient optimality test, otherwise Weiszfeld
  iterations from the weighted mean.
* other ``p``: the objective is strictly convex; bounded Brent search in
  one dimension, BFGS otherwise, both to about 1e-10.
"""

from __future__ import annotations

import numpy as np
from scipy import optimize

MEDIAN_RTOL = 1e-12
WEISZFELD_TOL = 1e-15
WEISZFELD_MAX_ITER = 20000


def exact_exponent(p: float) -> bool:
    return p == 1.0 or p == 2.0


def cell_cost(X: np.ndarray, w: np.ndarray, c: np.ndarray, p: float) -> float:
    d = np.sqrt(((X - c) ** 2).sum(axis=1))
    return float(np.dot(w, d ** p))


def fit_cells(X: np.ndarray, W: np.ndarray, p: float):
    """Fit one center per row of ``W``.

    ``X`` has shape ``(a, m)``, ``W`` shape ``(b, a)``; every row of ``W``
    needs positive total weight. Returns ``(centers (b, m), costs (b,),
    interval (b,) bool)``.
    """
    X = np.asarray(X, dtype=float)
    W = np.asarray(W, dtype=float)
    b = W.shape[0]
    m = X.shape[1]
    interval = np.zeros(b, dtype=bool)
    if p == 2.0:
        centers = (W @ X) / W.sum(axis=1, keepdims=True)
    elif p == 1.0 and m == 1:
        centers, interval = _weighted_median_1d(X[:, 0], W)
    elif p == 1.0:
        centers = _geometric_median(X, W)
    else:
        centers = np.stack([_convex_center(X, row, p) for row in W])
    diff = X[None, :, :] - centers[:, None, :]
    if m == 1:
        d = np.abs(diff[:, :, 0])
    else:
        d = np.sqrt((diff ** 2).sum(axis=2))
    costs = (W * d ** p).sum(axis=1) if p != 1.0 else (W * d).sum(axis=1)
    return centers, costs, interval


def fit_cell(X: np.ndarray, w: np.ndarray, p: float):
    centers, costs, interval = fit_cells(X, w[None, :], p)
    return centers[0], float(costs[0]), bool(interval[0])


def _weighted_median_1d(x: np.ndarray, W: np.ndarray):
    order = np.argsort(x, kind="stable")
    xs = x[order]
    Ws = W[:, order]
    cw = np.cumsum(Ws, axis=1)
    half = 0.5 * cw[:, -1:]
    tol = MEDIAN_RTOL * cw[:, -1:]
    # lowest median: first atom whose cumulative weight reaches half the mass
    t = np.argmax(cw >= half - tol, axis=1)
    rows = np.arange(W.shape[0])
    tie = (np.abs(cw[rows, t] - half[:, 0]) <= tol[:, 0]) & (Ws[rows, t] > 0)
    c = xs[t].copy()
    interval = np.zeros(W.shape[0], dtype=bool)
    if tie.any():
        after = (np.arange(len(xs))[None, :] > t[:, None]) & (Ws > 0)
        has_next = after.any(axis=1)
        nxt = np.argmax(after, axis=1)
        sel = tie & has_next
        c[sel] = 0.5 * (xs[t[sel]] + xs[nxt[sel]])
        interval = sel
    return c[:, None], interval


def _geometric_median(X: np.ndarray, W: np.ndarray) -> np.ndarray:
    a, m = X.shape
    diff = X[:, None, :] - X[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    with np.errstate(invalid="ignore", divide="ignore"):
        U = np.where(dist[:, :, None] > 0, diff / dist[:, :, None], 0.0)
    # pull on atom j from the rest of the cell: sum_i W[b, i] (x_j - x_i) / |x_j - x_i|
    G = np.einsum("bi,jim->bjm", W, U)
    R = np.sqrt((G ** 2).sum(axis=2))
    at_atom = (W > 0) & (R <= W * (1 + 1e-12) + 1e-15)
    centers = (W @ X) / W.sum(axis=1, keepdims=True)
    has = at_atom.any(axis=1)
    centers[has] = X[np.argmax(at_atom[has], axis=1)]

    todo = np.flatnonzero(~has)
    if todo.size:
        c = centers[todo]
        Wt = W[todo]
        scale = max(1.0, float(np.abs(X).max()))
        active = np.ones(len(todo), dtype=bool)
        for _ in range(WEISZFELD_MAX_ITER):
            ca = c[active]
            d = np.sqrt(((X[None, :, :] - ca[:, None, :]) ** 2).sum(axis=2))
            d = np.maximum(d, 1e-300)
            q = Wt[active] / d
            new = (q @ X) / q.sum(axis=1, keepdims=True)
            shift = np.abs(new - ca).max(axis=1)
            c[active] = new
            idx = np.flatnonzero(active)
            active[idx[shift <= WEISZFELD_TOL * scale]] = False
            if not active.any():
                break
        centers[todo] = c
    return centers


def _convex_center(X: np.ndarray, w: np.ndarray, p: float) -> np.ndarray:
    keep = w > 0
    Xc = X[keep]
    wc = w[keep]
    if Xc.shape[0] == 1:
        return Xc[0].copy()
    if X.shape[1] == 1:
        x = Xc[:, 0]
        res = optimize.minimize_scalar(
            lambda c: float(np.dot(wc, np.abs(x - c) ** p)),
            bounds=(x.min(), x.max()),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return np.array([res.x])

    def f(c):
        diff = Xc - c
        d = np.sqrt((diff ** 2).sum(axis=1))
        val = float(np.dot(wc, d ** p))
        with np.errstate(invalid="ignore", divide="ignore"):
            coef = np.where(d > 0, wc * p * d ** (p - 2.0), 0.0)
        grad = -(coef[:, None] * diff).sum(axis=0)
        return val, grad

    x0 = (wc @ Xc) / wc.sum()
    res = optimize.minimize(f, x0, jac=True, method="BFGS", options={"gtol": 1e-12})
    return np.asarray(res.x, dtype=float)
