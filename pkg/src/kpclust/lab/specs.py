"""Experiment inputs: populations, Markov chains, burn-in schedules, RNG streams."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..clustering import AMBIENT, DEFAULT_TOL, ClusterSolution, solve_exact
from ..clustering.solution import check_k
from ..errors import InexactReferenceError, InvalidChainError, SingularTargetError, ValidationError
from ..measures import DiscreteMeasure, from_counts
from ..metric import EuclideanSpace, FiniteSpace, check_exponent
from ..sets import SolutionFamily

WORKERS_ENV = "KPCLUST_WORKERS"


def stream(seed: int, *counters: int) -> np.random.Generator:
    """Independent counter-based generator for ``(seed, *counters)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, counters)])))


def worker_count(workers: int | None = None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, int(workers))


def run_tasks(fn: Callable, tasks: Sequence, workers: int | None = None) -> list:
    """Map ``fn`` over ``tasks`` in order, optionally in worker processes."""
    workers = worker_count(workers)
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks, chunksize=chunk))


@dataclass(frozen=True)
class GaussianMixture:
    """Sampler for a mixture of isotropic Gaussians in R^m."""

    means: tuple
    scales: tuple
    weights: tuple

    def __post_init__(self):
        if not (len(self.means) == len(self.scales) == len(self.weights)) or not self.means:
            raise ValidationError("mixture components need matching means, scales and weights")
        if any(s < 0 for s in self.scales) or any(w <= 0 for w in self.weights):
            raise ValidationError("scales must be >= 0 and weights > 0")

    @property
    def space(self) -> EuclideanSpace:
        return EuclideanSpace(len(np.atleast_1d(self.means[0])))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        w = np.asarray(self.weights, dtype=float)
        comp = rng.choice(len(w), size=n, p=w / w.sum())
        mu = np.array([np.atleast_1d(m) for m in self.means], dtype=float)
        sd = np.asarray(self.scales, dtype=float)
        return mu[comp] + sd[comp, None] * rng.standard_normal((n, mu.shape[1]))


@dataclass(frozen=True)
class PopulationSpec:
    """What to sample and which clustering problem to solve on each sample.

    A discrete ``measure`` is sampled by multinomial counts and its exact
    solution is the reference. A continuous ``sampler`` needs an explicit
    ``reference`` family, because no exact population solver exists for it.
    """

    measure: DiscreteMeasure | None = None
    k: int = 2
    p: float = 2.0
    domain: object = AMBIENT
    tol: float = DEFAULT_TOL
    sampler: GaussianMixture | None = None
    reference: SolutionFamily | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        check_k(self.k)
        check_exponent(self.p)
        if (self.measure is None) == (self.sampler is None):
            raise ValidationError("give exactly one of a discrete measure or a sampler")

    @property
    def space(self):
        return self.measure.space if self.measure is not None else self.sampler.space

    def reference_solution(self) -> ClusterSolution:
        if "ref" not in self._cache:
            if self.measure is None:
                raise InexactReferenceError("a sampled population has no exactly solvable reference")
            self._cache["ref"] = solve_exact(self.measure, self.k, self.domain, self.p, self.tol)
        return self._cache["ref"]

    def reference_family(self) -> SolutionFamily:
        """Exact, complete population optima; refuses anything weaker."""
        if self.reference is not None:
            return self.reference
        ref = self.reference_solution()
        if not ref.exact:
            raise InexactReferenceError("population reference is not exact")
        if ref.singular:
            raise SingularTargetError(
                f"population problem is singular (m-curve {list(ref.per_k_values)}); "
                "its optimal family is not compact"
            )
        if not ref.complete:
            raise InexactReferenceError("population optimal family is not fully enumerated")
        return ref.optima

    def draw_counts(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.multinomial(int(n), np.asarray(self.measure.weights, dtype=float))

    def measure_from_counts(self, counts) -> DiscreteMeasure:
        counts = np.asarray(counts)
        keep = counts > 0
        atoms = [a for a, k in zip(self.measure.atoms, keep) if k]
        return from_counts(self.measure.space, atoms, counts[keep])

    def draw(self, rng: np.random.Generator, n: int) -> DiscreteMeasure:
        if self.measure is not None:
            return self.measure_from_counts(self.draw_counts(rng, n))
        X = self.sampler.sample(rng, n)
        return DiscreteMeasure.of(self.space, list(X), None)


FORGET_NONE = "none"
FORGET_LOG = "log"


def forgetting_schedule(tag, n: int) -> int:
    """Burn-in length ``f_n``: ``none`` gives 0, ``log`` gives ``floor(ln n)``.

    A sequence may be passed instead of a tag; its ``(n-1)``-th entry is
    used. The result is clamped to ``[0, n-1]`` so at least one sample
    always survives.
    """
    n = int(n)
    if n < 1:
        raise ValidationError("n must be >= 1")
    if tag is None or tag == FORGET_NONE:
        f = 0
    elif tag == FORGET_LOG:
        f = math.floor(math.log(n))
    elif isinstance(tag, str):
        raise ValidationError(f"unknown forgetting schedule {tag!r}")
    else:
        f = int(tag[n - 1])
    return min(max(f, 0), n - 1)


@dataclass(frozen=True, eq=False)
class MarkovChainSpec:
    space: FiniteSpace
    P: np.ndarray
    start: int
    forgetting: object = FORGET_LOG

    def __post_init__(self):
        P = np.array(self.P, dtype=float)
        s = len(self.space)
        if P.shape != (s, s):
            raise InvalidChainError(f"transition matrix must be {s}x{s}")
        if np.any(P < 0) or np.any(np.abs(P.sum(axis=1) - 1.0) > 1e-12):
            raise InvalidChainError("transition matrix rows must be probability vectors")
        P.setflags(write=False)
        object.__setattr__(self, "P", P)
        try:
            object.__setattr__(self, "start", self.space.point(self.start))
        except ValidationError as exc:
            raise InvalidChainError(f"invalid initial state: {exc}") from None

    @classmethod
    def from_json(cls, obj) -> "MarkovChainSpec":
        if "space" in obj:
            space = FiniteSpace.from_json(obj["space"])
        elif "coords" in obj:
            space = FiniteSpace.from_coordinates(obj["coords"], obj.get("labels"))
        else:
            space = FiniteSpace.from_json(obj)
        return cls(space, np.asarray(obj["P"], dtype=float), obj["start"], obj.get("forgetting", FORGET_LOG))

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "P": self.P.tolist(),
            "start": self.space.labels[self.start],
            "forgetting": self.forgetting,
        }

    def stationary(self) -> DiscreteMeasure:
        """Stationary law, assuming a single closed communicating class."""
        s = self.P.shape[0]
        A = np.vstack([self.P.T - np.eye(s), np.ones((1, s))])
        b = np.zeros(s + 1)
        b[-1] = 1.0
        pi, *_ = np.linalg.lstsq(A, b, rcond=None)
        pi[np.abs(pi) < 1e-12] = 0.0
        if np.any(pi < 0):
            raise InvalidChainError("chain has no unique stationary law")
        return DiscreteMeasure.of(self.space, range(s), pi, normalize=True)


def three_state_chain() -> MarkovChainSpec:
    """Three states -1, 0, 1 on the line; 0 is transient and the chain starts there."""
    space = FiniteSpace.from_coordinates([-1.0, 0.0, 1.0], ["-1", "0", "1"])
    P = np.array([[1 / 2, 0, 1 / 2], [1 / 3, 1 / 3, 1 / 3], [1 / 2, 0, 1 / 2]])
    return MarkovChainSpec(space, P, "0", FORGET_LOG)
