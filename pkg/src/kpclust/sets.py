"""Finite center sets, families of them, and the distances between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyFamilyError, EmptySetError, SpaceMismatchError
from .metric import EuclideanSpace, FiniteSpace, Point, Space, check_exponent

# Coordinate tolerance for identifying Euclidean centers.
SET_ATOL = 1e-9


@dataclass(frozen=True)
class CenterSet:
    """Nonempty finite set of points, stored in canonical sorted order.

    Build instances with :meth:`of`, which normalises, sorts and merges
    duplicate points.
    """

    space: Space
    points: tuple

    @classmethod
    def of(cls, space: Space, points: Iterable, atol: float = SET_ATOL) -> "CenterSet":
        pts = sorted((space.point(x) for x in points), key=space.sort_key)
        if not pts:
            raise EmptySetError("a center set must contain at least one point")
        merged = [pts[0]]
        for x in pts[1:]:
            if not any(space.same_point(x, y, atol) for y in merged):
                merged.append(x)
        return cls(space, tuple(merged))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def sort_key(self):
        return (len(self.points), tuple(self.space.sort_key(x) for x in self.points))

    def to_json(self) -> list:
        if isinstance(self.space, FiniteSpace):
            return [self.space.labels[i] for i in self.points]
        return [list(x) for x in self.points]

    @classmethod
    def from_json(cls, space: Space, obj) -> "CenterSet":
        return cls.of(space, obj)

    def __repr__(self) -> str:
        if isinstance(self.space, FiniteSpace):
            body = ", ".join(self.space.labels[i] for i in self.points)
        elif isinstance(self.space, EuclideanSpace) and self.space.dim == 1:
            body = ", ".join(format(x[0], ".12g") for x in self.points)
        else:
            body = ", ".join(str(x) for x in self.points)
        return "{" + body + "}"


def same_set(a: CenterSet, b: CenterSet, atol: float = SET_ATOL) -> bool:
    if len(a) != len(b):
        return False
    if isinstance(a.space, FiniteSpace):
        return a.points == b.points
    return all(a.space.same_point(x, y, atol) for x, y in zip(a.points, b.points))


@dataclass(frozen=True)
class SolutionFamily:
    """Deduplicated, canonically ordered collection of center sets."""

    sets: tuple

    @classmethod
    def of(cls, sets: Iterable[CenterSet], atol: float = SET_ATOL) -> "SolutionFamily":
        kept: list[CenterSet] = []
        for s in sorted(sets, key=CenterSet.sort_key):
            if not any(same_set(s, t, atol) for t in kept):
                kept.append(s)
        if kept:
            space = kept[0].space
            if any(s.space != space for s in kept):
                raise SpaceMismatchError("center sets in one family must share a space")
        return cls(tuple(kept))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i) -> CenterSet:
        return self.sets[i]

    def equals(self, other: "SolutionFamily", atol: float = SET_ATOL) -> bool:
        return len(self) == len(other) and all(same_set(a, b, atol) for a, b in zip(self, other))

    def to_json(self) -> list:
        return [s.to_json() for s in self.sets]

    @classmethod
    def from_json(cls, space: Space, obj) -> "SolutionFamily":
        return cls.of(CenterSet.of(space, s) for s in obj)


def _as_set(space: Space, S) -> CenterSet:
    if isinstance(S, CenterSet):
        if S.space != space:
            raise SpaceMismatchError("center set belongs to a different space")
        return S
    pts = list(S)
    if not pts:
        raise EmptySetError("set must be nonempty")
    return CenterSet.of(space, pts)


def point_to_set(space: Space, x, S, p: float | None = None) -> float:
    """``min_{s in S} d(x, s)``, raised to the power ``p`` when given."""
    S = _as_set(space, S)
    d = float(space.pairwise([space.point(x)], S.points).min())
    return d if p is None else d ** check_exponent(p)


def _directed(space: Space, S: CenterSet, T: CenterSet) -> float:
    return float(space.pairwise(S.points, T.points).min(axis=1).max())


def directed_hausdorff(space: Space, S, T) -> float:
    """Largest distance from a point of ``S`` to the set ``T``. Not symmetric."""
    return _directed(space, _as_set(space, S), _as_set(space, T))


def hausdorff(space: Space, S, T) -> float:
    S = _as_set(space, S)
    T = _as_set(space, T)
    D = space.pairwise(S.points, T.points)
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


def hausdorff_matrix(space: Space, A: Sequence[CenterSet], B: Sequence[CenterSet]) -> np.ndarray:
    """Pairwise Hausdorff distances between two lists of center sets."""
    out = np.empty((len(A), len(B)))
    for i, S in enumerate(A):
        for j, T in enumerate(B):
            out[i, j] = hausdorff(space, S, T)
    return out


def solution_set_distance(empirical: SolutionFamily, population: SolutionFamily) -> float:
    """``max_{S_n in empirical} min_{S in population} d_H(S_n, S)``.

    This is the directed Hausdorff distance from ``empirical`` to
    ``population`` in the space of center sets.
    """
    if len(empirical) == 0 or len(population) == 0:
        raise EmptyFamilyError("solution families must be nonempty")
    space = population[0].space
    return float(hausdorff_matrix(space, empirical.sets, population.sets).min(axis=1).max())


def _window_candidates(window: Sequence[CenterSet]):
    if not window:
        raise EmptySetError("window must contain at least one set")
    space = window[0].space
    pts = {}
    for S in window:
        for x in S.points:
            pts[x] = None
    cand = sorted(pts, key=space.sort_key)
    dist = np.stack([space.pairwise(cand, S.points).min(axis=1) for S in window])
    return space, cand, dist


def tail_li(window: Sequence[CenterSet], delta: float = 0.0) -> list:
    """Points of the window's union that stay within ``delta`` of every member.

    A finite-window diagnostic standing in for the Kuratowski lower limit.
    """
    _, cand, dist = _window_candidates(window)
    keep = (dist <= delta).all(axis=0)
    return [x for x, k in zip(cand, keep) if k]


def tail_ls(window: Sequence[CenterSet], delta: float = 0.0) -> list:
    """Points of the window's union within ``delta`` of at least one member."""
    _, cand, dist = _window_candidates(window)
    keep = (dist <= delta).any(axis=0)
    return [x for x, k in zip(cand, keep) if k]
