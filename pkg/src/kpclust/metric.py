"""Metric contexts: finite labelled spaces and Euclidean space.

Points are plain hashable values so they can key dictionaries and be
sorted into a canonical order:

* in a :class:`FiniteSpace` a point is an ``int`` index into ``labels``;
* in a :class:`EuclideanSpace` a point is a ``tuple`` of floats of length
  ``dim``.

Use :meth:`Space.point` to normalise user input (scalars for ``dim == 1``,
lists, numpy rows, or labels for finite spaces).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidExponentError, InvalidPointError, MetricAxiomError

Point = Union[int, tuple]

METRIC_ATOL = 1e-12


def check_exponent(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise InvalidExponentError(f"exponent p must be a finite real >= 1, got {p!r}")
    return p


class Space:
    """Common interface of the two metric contexts."""

    def point(self, x) -> Point:  # pragma: no cover - abstract
        raise NotImplementedError

    def distance(self, x: Point, y: Point) -> float:  # pragma: no cover
        raise NotImplementedError

    def pairwise(self, xs: Sequence[Point], ys: Sequence[Point]) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def sort_key(self, x: Point):
        return x

    def same_point(self, x: Point, y: Point, atol: float = 0.0) -> bool:
        return x == y


@dataclass(frozen=True, eq=False)
class FiniteSpace(Space):
    """A finite set of labelled points with an explicit distance matrix."""

    labels: tuple
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        dist = np.array(self.dist, dtype=float)
        n = len(labels)
        if n == 0:
            raise MetricAxiomError("finite space needs at least one point")
        if len(set(labels)) != n:
            raise MetricAxiomError("labels must be distinct")
        if dist.shape != (n, n):
            raise MetricAxiomError(f"distance matrix must be {n}x{n}, got {dist.shape}")
        validate_metric_matrix(dist)
        dist.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(labels)})

    @classmethod
    def from_coordinates(cls, coords: Sequence[float], labels: Sequence[str] | None = None) -> "FiniteSpace":
        """Finite subset of the real line with the inherited metric."""
        x = np.asarray(coords, dtype=float)
        if labels is None:
            labels = [format(v, "g") for v in x]
        return cls(tuple(labels), np.abs(x[:, None] - x[None, :]))

    @classmethod
    def from_json(cls, obj) -> "FiniteSpace":
        return cls(tuple(obj["labels"]), np.asarray(obj["dist"], dtype=float))

    @classmethod
    def load(cls, path) -> "FiniteSpace":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "dist": self.dist.tolist()}

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, FiniteSpace)
            and self.labels == other.labels
            and np.array_equal(self.dist, other.dist)
        )

    def __hash__(self) -> int:
        return hash(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InvalidPointError(f"unknown label {label!r}") from None

    def label(self, x: Point) -> str:
        return self.labels[self.point(x)]

    def point(self, x) -> int:
        if isinstance(x, str):
            return self.index(x)
        if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
            raise InvalidPointError(f"finite-space points are indices or labels, got {x!r}")
        i = int(x)
        if not 0 <= i < len(self.labels):
            raise InvalidPointError(f"index {i} out of range for {len(self.labels)} points")
        return i

    def distance(self, x: Point, y: Point) -> float:
        return float(self.dist[self.point(x), self.point(y)])

    def pairwise(self, xs, ys) -> np.ndarray:
        ix = np.fromiter((self.point(x) for x in xs), dtype=np.intp)
        iy = np.fromiter((self.point(y) for y in ys), dtype=np.intp)
        return self.dist[np.ix_(ix, iy)]


@dataclass(frozen=True)
class EuclideanSpace(Space):
    """R^dim with the Euclidean metric."""

    dim: int

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidPointError(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))

    def point(self, x) -> tuple:
        if np.isscalar(x) and not isinstance(x, str):
            arr = np.array([x], dtype=float)
        else:
            try:
                arr = np.asarray(x, dtype=float).reshape(-1)
            except (TypeError, ValueError):
                raise InvalidPointError(f"not a coordinate vector: {x!r}") from None
        if arr.shape[0] != self.dim:
            raise InvalidPointError(f"expected {self.dim} coordinates, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidPointError(f"coordinates must be finite: {x!r}")
        return tuple(float(v) + 0.0 for v in arr)  # + 0.0 folds -0.0 into 0.0

    def distance(self, x: Point, y: Point) -> float:
        return math.dist(self.point(x), self.point(y))

    def coords(self, xs: Iterable[Point]) -> np.ndarray:
        rows = [self.point(x) for x in xs]
        return np.array(rows, dtype=float).reshape(len(rows), self.dim)

    def pairwise(self, xs, ys) -> np.ndarray:
        a = self.coords(xs)
        b = self.coords(ys)
        if self.dim == 1:
            return np.abs(a[:, 0][:, None] - b[:, 0][None, :])
        return np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=-1))

    def same_point(self, x: Point, y: Point, atol: float = 0.0) -> bool:
        if atol == 0.0:
            return x == y
        return max(abs(u - v) for u, v in zip(x, y)) <= atol


def validate_metric_matrix(dist: np.ndarray, atol: float = METRIC_ATOL) -> None:
    """Raise :class:`MetricAxiomError` unless ``dist`` is a metric."""
    if not np.all(np.isfinite(dist)):
        raise MetricAxiomError("distances must be finite")
    if np.any(dist < -atol):
        raise MetricAxiomError("distances must be nonnegative")
    if np.any(np.abs(np.diag(dist)) > atol):
        raise MetricAxiomError("distance matrix must have a zero diagonal")
    if np.any(np.abs(dist - dist.T) > atol):
        raise MetricAxiomError("distance matrix must be symmetric")
    off = ~np.eye(dist.shape[0], dtype=bool)
    if np.any(dist[off] <= atol):
        raise MetricAxiomError("distinct points must be at positive distance")
    for l in range(dist.shape[0]):
        bad = dist > dist[:, l : l + 1] + dist[l : l + 1, :] + atol
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise MetricAxiomError(f"triangle inequality fails for points {i}, {j} via {l}")


def distance(space: Space, x, y) -> float:
    return space.distance(x, y)


def power_distance(space: Space, x, y, p: float) -> float:
    p = check_exponent(p)
    return space.distance(x, y) ** p


def peter_paul_constant(p: float, eps: float) -> float:
    """Coefficient ``c`` with ``d^p(a, y) <= c d^p(a, b) + (1 + eps) d^p(b, y)``.

    Obtained from convexity of ``t -> t^p``: writing
    ``d(a,b) + d(b,y) = lam (d(a,b)/lam) + (1-lam) (d(b,y)/(1-lam))`` and
    choosing ``(1-lam)^(1-p) = 1 + eps`` gives ``c = lam^(1-p)``.
    """
    p = check_exponent(p)
    eps = float(eps)
    if not eps > 0.0 or not math.isfinite(eps):
        raise InvalidExponentError(f"eps must be a finite positive real, got {eps!r}")
    if p == 1.0:
        return 1.0
    lam = -math.expm1(-math.log1p(eps) / (p - 1.0))
    return lam ** (1.0 - p)
