"""Finitely supported probability measures and the clustering objective."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    EmptySampleError,
    InvalidBurnInError,
    InvalidMeasureError,
    SpaceMismatchError,
)
from .metric import EuclideanSpace, FiniteSpace, Space, check_exponent
from .sets import CenterSet, _as_set

WEIGHT_SUM_ATOL = 1e-12
ATOM_MERGE_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Probability measure with finitely many atoms.

    Atoms are kept in canonical order and are pairwise distinct; weights
    are strictly positive and sum to one. Build with :meth:`of`.
    """

    space: Space
    atoms: tuple
    weights: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, space: Space, atoms: Sequence, weights: Sequence[float] | None = None,
           normalize: bool = False) -> "DiscreteMeasure":
        pts = [space.point(x) for x in atoms]
        if not pts:
            raise InvalidMeasureError("a measure needs at least one atom")
        w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=float).reshape(-1)
        if weights is None:
            normalize = True
        if w.shape[0] != len(pts):
            raise InvalidMeasureError("atoms and weights differ in length")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InvalidMeasureError("weights must be finite and nonnegative")
        total = float(w.sum())
        if normalize:
            if total <= 0:
                raise InvalidMeasureError("weights sum to zero")
            w = w / total
        elif abs(total - 1.0) > WEIGHT_SUM_ATOL:
            raise InvalidMeasureError(f"weights sum to {total!r}, not 1")

        order = sorted(range(len(pts)), key=lambda i: space.sort_key(pts[i]))
        atoms_out: list = []
        w_out: list[float] = []
        for i in order:
            if w[i] == 0.0:
                continue
            x = pts[i]
            if atoms_out and space.same_point(atoms_out[-1], x, ATOM_MERGE_ATOL):
                w_out[-1] += w[i]
            else:
                atoms_out.append(x)
                w_out.append(float(w[i]))
        if not atoms_out:
            raise InvalidMeasureError("all weights are zero")
        warr = np.array(w_out)
        warr.setflags(write=False)
        return cls(space, tuple(atoms_out), warr)

    def __len__(self) -> int:
        return len(self.atoms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiscreteMeasure)
            and self.space == other.space
            and self.atoms == other.atoms
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self) -> int:
        return hash((self.atoms, self.weights.tobytes()))

    def weight_of(self, x) -> float:
        x = self.space.point(x)
        for a, w in zip(self.atoms, self.weights):
            if a == x:
                return float(w)
        return 0.0

    def as_dict(self) -> dict:
        return dict(zip(self.atoms, self.weights.tolist()))

    def to_json(self) -> dict:
        if isinstance(self.space, FiniteSpace):
            atoms = [self.space.labels[i] for i in self.atoms]
        else:
            atoms = [list(x) for x in self.atoms]
        return {"atoms": atoms, "weights": self.weights.tolist()}

    def __repr__(self) -> str:
        if isinstance(self.space, FiniteSpace):
            names = [self.space.labels[i] for i in self.atoms]
        elif isinstance(self.space, EuclideanSpace) and self.space.dim == 1:
            names = [format(x[0], "g") for x in self.atoms]
        else:
            names = [str(x) for x in self.atoms]
        body = " + ".join(f"{w:.6g}*delta({n})" for n, w in zip(names, self.weights))
        return f"DiscreteMeasure({body})"


def dirac(space: Space, x) -> DiscreteMeasure:
    return DiscreteMeasure.of(space, [x], [1.0])


def uniform(space: Space, atoms: Sequence) -> DiscreteMeasure:
    return DiscreteMeasure.of(space, atoms, None)


def mixture(mu: DiscreteMeasure, nu: DiscreteMeasure, t: float) -> DiscreteMeasure:
    """``(1 - t) mu + t nu``."""
    _check_same_space(mu, nu)
    atoms = list(mu.atoms) + list(nu.atoms)
    weights = np.concatenate([(1.0 - t) * mu.weights, t * nu.weights])
    return DiscreteMeasure.of(mu.space, atoms, weights, normalize=True)


def from_counts(space: Space, atoms: Sequence, counts: Sequence[int]) -> DiscreteMeasure:
    c = np.asarray(counts, dtype=float)
    if c.sum() <= 0:
        raise EmptySampleError("no samples")
    return DiscreteMeasure.of(space, atoms, c, normalize=True)


def empirical(space: Space, samples: Sequence) -> DiscreteMeasure:
    """Empirical measure: each sample carries mass ``1/n``."""
    if len(samples) == 0:
        raise EmptySampleError("empirical measure of an empty sample")
    counts = Counter(space.point(x) for x in samples)
    return from_counts(space, list(counts), list(counts.values()))


def forgetful_empirical(space: Space, samples: Sequence, burn_in: int) -> DiscreteMeasure:
    """Empirical measure of the samples after dropping the first ``burn_in``."""
    n = len(samples)
    if isinstance(burn_in, bool) or int(burn_in) != burn_in or burn_in < 0:
        raise InvalidBurnInError(f"burn-in must be a nonnegative integer, got {burn_in!r}")
    if burn_in >= n:
        raise InvalidBurnInError(f"burn-in {burn_in} leaves no samples out of {n}")
    return empirical(space, list(samples)[int(burn_in):])


def support(mu: DiscreteMeasure) -> CenterSet:
    return CenterSet.of(mu.space, mu.atoms)


def _check_same_space(mu: DiscreteMeasure, nu: DiscreteMeasure) -> None:
    if mu.space != nu.space:
        raise SpaceMismatchError("measures live on different spaces")


def cluster_cost(mu: DiscreteMeasure, S, p: float) -> float:
    """Integral of the ``p``-th power distance to the nearest center."""
    p = check_exponent(p)
    S = _as_set(mu.space, S)
    d = mu.space.pairwise(mu.atoms, S.points).min(axis=1)
    return float(np.dot(mu.weights, d ** p))


def pth_moment(mu: DiscreteMeasure, x, p: float) -> float:
    p = check_exponent(p)
    d = mu.space.pairwise([mu.space.point(x)], mu.atoms)[0]
    return float(np.dot(mu.weights, d ** p))


def kl_divergence(nu: DiscreteMeasure, mu: DiscreteMeasure) -> float:
    """Relative entropy of ``nu`` from ``mu`` in nats; ``inf`` unless ``nu << mu``."""
    _check_same_space(nu, mu)
    ref = mu.as_dict()
    total = 0.0
    for x, w in zip(nu.atoms, nu.weights):
        m = ref.get(x)
        if m is None:
            return math.inf
        total += w * math.log(w / m)
    return max(total, 0.0)


def tv_distance(nu: DiscreteMeasure, mu: DiscreteMeasure) -> float:
    _check_same_space(nu, mu)
    a = nu.as_dict()
    b = mu.as_dict()
    return 0.5 * sum(abs(a.get(x, 0.0) - b.get(x, 0.0)) for x in set(a) | set(b))
