"""IID experiments: consistency of optima, elbow choice, continuity, tail decay."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from ..clustering import AMBIENT, ClusterSolution, default_k_max, elbow_from_curve, solve_exact
from ..errors import NonUniqueElbowError, SingularTargetError, ValidationError
from ..measures import DiscreteMeasure, dirac, mixture
from ..sets import SolutionFamily
from .records import ExperimentRecord, family_distance
from .specs import PopulationSpec, run_tasks, stream

DEFAULT_N_GRID = (100, 1000, 10000)


def _check_grid(n_grid: Sequence[int]) -> list[int]:
    grid = [int(n) for n in n_grid]
    if not grid or any(n < 1 for n in grid):
        raise ValidationError("n-grid must be a nonempty list of positive integers")
    return grid


class _Solver:
    """Exact empirical solves for one population, memoised on sample counts."""

    def __init__(self, pop: PopulationSpec, k_max: int | None):
        self.pop = pop
        self.k_max = k_max
        self.ref = pop.reference_family()
        self._memo: dict = {}

    def observe(self, emp: DiscreteMeasure, key=None):
        if key is not None and key in self._memo:
            return self._memo[key]
        sol = solve_exact(emp, self.pop.k, self.pop.domain, self.pop.p, self.pop.tol)
        d = family_distance(sol, self.ref)
        k_elb = None
        curve: tuple = ()
        if self.k_max is not None:
            curve = solve_exact(emp, self.k_max, AMBIENT, self.pop.p, self.pop.tol).per_k_values
            k_elb = elbow_from_curve(curve).k
        out = (d, k_elb, sol.value, tuple(curve))
        if key is not None:
            self._memo[key] = out
        return out


def _iid_trial(args):
    name, pop, grid, trial, seed, k_max = args
    solver = _Solver(pop, k_max)
    out = []
    for j, n in enumerate(grid):
        t0 = time.perf_counter()
        rng = stream(seed, trial, j)
        if pop.measure is not None:
            counts = pop.draw_counts(rng, n)
            emp = pop.measure_from_counts(counts)
            key = tuple(counts.tolist())
        else:
            emp = pop.draw(rng, n)
            key = None
        d, k_elb, value, curve = solver.observe(emp, key)
        out.append(ExperimentRecord(name, int(seed), trial, n, d, k_elb, value, curve,
                                    time.perf_counter() - t0))
    return out


def run_iid(pop: PopulationSpec, n_grid: Sequence[int] = DEFAULT_N_GRID, trials: int = 50,
            seed: int = 0, k_max: int | None = None, elbow: bool = True,
            workers: int | None = None) -> list[ExperimentRecord]:
    """Distance of empirical optima from the population optima, per trial and n.

    Each (trial, n) draws a fresh IID sample of size n from its own
    random stream, so records do not depend on worker scheduling.
    """
    grid = _check_grid(n_grid)
    pop.reference_family()  # refuse early
    if elbow and k_max is None and pop.measure is not None:
        k_max = default_k_max(pop.measure)
    if not elbow:
        k_max = None
    tasks = [("iid", pop, grid, t, seed, k_max) for t in range(int(trials))]
    return [r for chunk in run_tasks(_iid_trial, tasks, workers) for r in chunk]


@dataclass(frozen=True)
class ElbowResult:
    population_k: int
    population_delta2: tuple
    frequency: dict
    records: tuple


def population_elbow(mu: DiscreteMeasure, k_max: int, p: float, tie_tol: float = 1e-9):
    """Population elbow choice; refuses when the maximiser is not unique."""
    rep = elbow_from_curve(solve_exact(mu, k_max, AMBIENT, p).per_k_values, tie_tol)
    scan = list(rep.delta2) + ([rep.delta2_at_k_max] if rep.delta2_at_k_max is not None else [])
    top = max(scan)
    ties = sum(1 for v in scan if v >= top - tie_tol)
    if ties > 1 or not rep.tail_valid:
        raise NonUniqueElbowError(
            f"population second differences {scan} do not have a unique certified maximiser"
        )
    return rep


def run_elbow(pop: PopulationSpec, n_grid: Sequence[int] = DEFAULT_N_GRID, trials: int = 50,
              seed: int = 0, k_max: int | None = None, workers: int | None = None) -> ElbowResult:
    """Frequency with which the empirical elbow choice equals the population's."""
    if pop.measure is None:
        raise ValidationError("elbow experiments need a discrete population")
    if k_max is None:
        k_max = default_k_max(pop.measure)
    rep = population_elbow(pop.measure, k_max, pop.p)
    grid = _check_grid(n_grid)
    pop.reference_family()
    tasks = [("elbow", pop, grid, t, seed, k_max) for t in range(int(trials))]
    records = [r for chunk in run_tasks(_iid_trial, tasks, workers) for r in chunk]
    freq = {}
    for n in grid:
        hits = [r.k_elb == rep.k for r in records if r.n == n]
        freq[n] = sum(hits) / len(hits) if hits else math.nan
    return ElbowResult(rep.k, rep.delta2, freq, tuple(records))


def contaminated(mu: DiscreteMeasure, z, n: int) -> DiscreteMeasure:
    """``(1 - 1/n) mu + (1/n) delta_z``."""
    return mixture(mu, dirac(mu.space, z), 1.0 / n)


def run_continuity(mu: DiscreteMeasure, z, k: int, p: float, n_grid: Sequence[int],
                   R=AMBIENT, tol: float = 1e-9) -> list[tuple[int, float]]:
    """``D_n`` for the deterministic sequence ``(1 - 1/n) mu + (1/n) delta_z``.

    With ``R`` the support domain, each contaminated measure is solved over
    its own support (which contains ``z``); pass ``ExplicitFinite`` to hold
    the candidate domain fixed.
    """
    grid = _check_grid(n_grid)
    ref = solve_exact(mu, k, R, p, tol)
    if ref.singular:
        raise SingularTargetError(
            f"(mu, k={k}, R) is singular: m-curve {list(ref.per_k_values)}; "
            "its optimal family is not compact"
        )
    out = []
    for n in grid:
        sol = solve_exact(contaminated(mu, z, n), k, R, p, tol)
        out.append((n, family_distance(sol, ref.optima)))
    return out


@dataclass(frozen=True)
class LDPRow:
    n: int
    trials: int
    hits: int
    frequency: float
    ci_low: float
    ci_high: float
    log_frequency: float | None
    rate: float | None
    upper_bound: float | None

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class LDPResult:
    eps: float
    rows: tuple
    slope: float | None
    intercept: float | None

    def decreasing_where_positive(self) -> bool:
        logs = [r.log_frequency for r in self.rows if r.hits > 0]
        return all(b < a for a, b in zip(logs, logs[1:]))

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "slope": self.slope,
            "intercept": self.intercept,
            "slope_negative": self.slope is not None and self.slope < 0,
            "decreasing_where_positive": self.decreasing_where_positive(),
            "rows": [r.to_json() for r in self.rows],
        }


def _ldp_chunk(args):
    pop, n, j, trials, seed, eps = args
    solver = _Solver(pop, None)
    hits = 0
    for t in range(trials):
        counts = pop.draw_counts(stream(seed, t, j), n)
        d, *_ = solver.observe(pop.measure_from_counts(counts), tuple(counts.tolist()))
        hits += d >= eps
    return hits


def clopper_pearson(hits: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    alpha = 1.0 - level
    lo = 0.0 if hits == 0 else float(stats.beta.ppf(alpha / 2, hits, trials - hits + 1))
    hi = 1.0 if hits == trials else float(stats.beta.ppf(1 - alpha / 2, hits + 1, trials - hits))
    return lo, hi


def run_ldp(pop: PopulationSpec, eps: float, n_grid: Sequence[int], trials_per_n: int = 10_000,
            seed: int = 0, workers: int | None = None) -> LDPResult:
    """Monte-Carlo estimate of ``P(D_n >= eps)`` and its exponential decay in n.

    Zero observed hits give only a one-sided 95% bound on the probability
    (``upper_bound``); such n are left out of the slope fit.
    """
    eps = float(eps)
    if not eps > 0 or not math.isfinite(eps):
        raise ValidationError("eps must be a finite positive real; at eps = 0 the event is not rare")
    if pop.measure is None:
        raise ValidationError("tail experiments need a discrete population")
    grid = _check_grid(n_grid)
    pop.reference_family()
    tasks = [(pop, n, j, int(trials_per_n), seed, eps) for j, n in enumerate(grid)]
    counts = run_tasks(_ldp_chunk, tasks, workers)
    rows = []
    for n, hits in zip(grid, counts):
        lo, hi = clopper_pearson(hits, trials_per_n)
        if hits:
            freq = hits / trials_per_n
            lf = math.log(freq)
            rows.append(LDPRow(n, trials_per_n, hits, freq, lo, hi, lf, lf / n, None))
        else:
            rows.append(LDPRow(n, trials_per_n, 0, 0.0, lo, hi, None, None, hi))
    pos = [(r.n, r.log_frequency) for r in rows if r.hits > 0]
    slope = intercept = None
    if len(pos) >= 2:
        x, y = np.array(pos).T
        slope, intercept = (float(v) for v in np.polyfit(x, y, 1))
    return LDPResult(eps, tuple(rows), slope, intercept)
