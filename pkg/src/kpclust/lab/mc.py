"""Medoids on Markov-chain data, with and without a burn-in.

Along one simulated path the empirical measure after ``n`` steps is a
vector of state counts, so the medoid problem at every ``n`` can be solved
at once: each subset ``T`` of the (small) state space has cost
``counts(n) . min_{t in T} d^p(t, .) / total(n)`` and is feasible when all
of its states have been visited in the window. This is the same exhaustive
subset scan as :func:`kpclust.clustering.medoids`, vectorised over ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .. import kernels
from ..clustering import DEFAULT_TOL, medoids
from ..clustering.solution import ABS_TOL, check_k
from ..metric import check_exponent
from ..sets import CenterSet, SolutionFamily, hausdorff_matrix
from .iid import _check_grid
from .records import ExperimentRecord
from .specs import FORGET_LOG, FORGET_NONE, MarkovChainSpec, forgetting_schedule, run_tasks, stream


def simulate(chain: MarkovChainSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """State indices ``Y_1..Y_n`` with ``Y_1`` the initial state."""
    cum = np.cumsum(chain.P, axis=1)
    cum[:, -1] = 1.0
    return kernels.simulate_chain(cum, chain.start, rng.random(n - 1))


class MedoidPath:
    """Exact medoid families for a batch of count vectors on a finite space."""

    def __init__(self, chain: MarkovChainSpec, k: int, p: float, reference: SolutionFamily,
                 tol: float = DEFAULT_TOL):
        space = chain.space
        s = len(space)
        self.subsets = [T for j in range(1, min(k, s) + 1) for T in combinations(range(s), j)]
        Dp = space.dist ** p
        self.serve = np.array([Dp[list(T)].min(axis=0) for T in self.subsets])  # (nT, s)
        member = np.zeros((len(self.subsets), s), dtype=bool)
        for i, T in enumerate(self.subsets):
            member[i, list(T)] = True
        self.member = member
        sets = [CenterSet.of(space, T) for T in self.subsets]
        self.h = hausdorff_matrix(space, sets, reference.sets).min(axis=1)
        self.tol = tol
        self.index = {T: i for i, T in enumerate(self.subsets)}

    def optimal_mask(self, counts: np.ndarray) -> np.ndarray:
        """Boolean ``(N, nT)``: which subsets are optimal for each count row."""
        counts = np.asarray(counts, dtype=float)
        total = counts.sum(axis=1, keepdims=True)
        cost = (counts @ self.serve.T) / total
        visited = counts > 0
        feasible = ~(self.member[None, :, :] & ~visited[:, None, :]).any(axis=2)
        cost = np.where(feasible, cost, np.inf)
        value = cost.min(axis=1, keepdims=True)
        bound = np.where(value > ABS_TOL, value * (1.0 + self.tol), ABS_TOL)
        return feasible & (cost <= bound)

    def distance(self, opt: np.ndarray) -> np.ndarray:
        return np.where(opt, self.h[None, :], -np.inf).max(axis=1)

    def equals(self, opt: np.ndarray, family: Sequence[tuple]) -> np.ndarray:
        target = np.zeros(len(self.subsets), dtype=bool)
        for T in family:
            target[self.index[tuple(sorted(T))]] = True
        return (opt == target[None, :]).all(axis=1)


@dataclass(frozen=True)
class MCTrial:
    trial: int
    records: tuple  # ExperimentRecord per grid n, no burn-in
    records_forget: tuple  # same with burn-in
    event_any: bool
    first_event: int | None
    event_count: int
    final_D: float
    final_D_forget: float


@dataclass(frozen=True)
class MCResult:
    window: tuple
    forgetting: object
    trials: tuple

    @property
    def event_frequency(self) -> float:
        return float(np.mean([t.event_any for t in self.trials]))

    @property
    def final_zero_frequency(self) -> float:
        return float(np.mean([t.final_D == 0.0 for t in self.trials]))

    @property
    def final_zero_frequency_forget(self) -> float:
        return float(np.mean([t.final_D_forget == 0.0 for t in self.trials]))

    def records(self, forget: bool = False) -> list[ExperimentRecord]:
        return [r for t in self.trials for r in (t.records_forget if forget else t.records)]

    def summary(self) -> dict:
        return {
            "event_window": list(self.window),
            "forgetting": self.forgetting,
            "event_frequency": self.event_frequency,
            "final_D_zero_frequency": self.final_zero_frequency,
            "final_D_zero_frequency_forget": self.final_zero_frequency_forget,
            "first_event_n": [t.first_event for t in self.trials],
        }


def _mc_trial(args):
    chain, k, p, grid, window, trial, seed, forget, tol, event_family = args
    n_max = max(max(grid), window[1])
    path = simulate(chain, n_max, stream(seed, trial))
    s = len(chain.space)
    onehot = np.zeros((n_max + 1, s), dtype=np.int64)
    onehot[np.arange(1, n_max + 1), path] = 1
    cum = np.cumsum(onehot, axis=0)  # cum[n] = counts of Y_1..Y_n

    ref = medoids(chain.stationary(), k, p, tol).optima
    mp = MedoidPath(chain, k, p, ref, tol)

    lo, hi = window
    ns = np.arange(lo, hi + 1)
    opt = mp.optimal_mask(cum[ns])
    event = mp.equals(opt, event_family)
    hits = np.flatnonzero(event)

    def at(n_values, burn):
        n_values = np.asarray(n_values)
        f = np.array([forgetting_schedule(burn, int(n)) for n in n_values])
        counts = cum[n_values] - cum[f]
        return mp.distance(mp.optimal_mask(counts))

    g = np.asarray(grid)
    d_plain = at(g, FORGET_NONE)
    d_forget = at(g, forget)
    recs = tuple(ExperimentRecord("mc", int(seed), trial, int(n), float(d)) for n, d in zip(g, d_plain))
    recs_f = tuple(ExperimentRecord("mc-forget", int(seed), trial, int(n), float(d)) for n, d in zip(g, d_forget))
    return MCTrial(
        trial=trial,
        records=recs,
        records_forget=recs_f,
        event_any=bool(hits.size),
        first_event=int(ns[hits[0]]) if hits.size else None,
        event_count=int(hits.size),
        final_D=float(d_plain[-1]),
        final_D_forget=float(d_forget[-1]),
    )


def run_mc(chain: MarkovChainSpec, k: int = 1, p: float = 2.0,
           n_grid: Sequence[int] = (100, 1000, 20000), trials: int = 100, seed: int = 0,
           forget=None, window: tuple | None = None, tol: float = DEFAULT_TOL,
           event_family: Sequence[tuple] | None = None, workers: int | None = None) -> MCResult:
    """Medoid consistency along Markov paths, plain and with a burn-in.

    ``event_family`` (default: the initial state alone, ``{{Y_1}}``) is the
    medoid family whose exact occurrence is tracked for every n in
    ``window`` (default: the span of ``n_grid``). ``D_n`` against the
    stationary law's medoids is recorded at the grid points, with and
    without the burn-in ``forget`` (default: the chain's own schedule).
    """
    k = check_k(k)
    p = check_exponent(p)
    grid = sorted(set(_check_grid(n_grid)))
    if window is None:
        window = (grid[0], grid[-1])
    window = (int(window[0]), int(window[1]))
    if not 1 <= window[0] <= window[1]:
        raise ValueError("event window must satisfy 1 <= lo <= hi")
    if forget is None:
        forget = chain.forgetting if chain.forgetting is not None else FORGET_LOG
    if event_family is None:
        event_family = [(chain.start,)]
    tasks = [(chain, k, p, grid, window, t, seed, forget, tol, [tuple(T) for T in event_family])
             for t in range(int(trials))]
    out = run_tasks(_mc_trial, tasks, workers)
    return MCResult(window, forget if isinstance(forget, str) else "explicit", tuple(out))


def burn_in_tv_bound(n: int, f: int) -> float:
    """Total-variation gap between plain and burned-in empirical measures is at most this."""
    return abs(n / (n - f) - 1.0) + f / (n - f) if n > f else math.inf
