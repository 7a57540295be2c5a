from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import EmptyDomainError, ValidationError
from ..metric import Space
from ..sets import CenterSet, SolutionFamily

DEFAULT_TOL = 1e-9
ABS_TOL = 1e-12
DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Ambient:
    """Centers may be anywhere in the space."""

    def to_json(self):
        return "ambient"


@dataclass(frozen=True)
class SupportOfMeasure:
    """Centers must be atoms of the measure being clustered."""

    def to_json(self):
        return "support"


@dataclass(frozen=True)
class ExplicitFinite:
    """Centers must come from a fixed finite candidate list."""

    points: tuple

    def __post_init__(self):
        if len(self.points) == 0:
            raise EmptyDomainError("explicit domain must be nonempty")
        object.__setattr__(self, "points", tuple(self.points))

    def to_json(self):
        return {"explicit": [list(x) if isinstance(x, tuple) else x for x in self.points]}


AMBIENT = Ambient()
SUPPORT = SupportOfMeasure()
DomainSpec = Ambient | SupportOfMeasure | ExplicitFinite


def check_k(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise ValidationError(f"k must be >= 1, got {k!r}")
    return int(k)


def check_tol(tol) -> float:
    tol = float(tol)
    if not (tol >= 0.0 and math.isfinite(tol)):
        raise ValidationError(f"tolerance must be a finite nonnegative real, got {tol!r}")
    return tol


def optimality_bound(value: float, tol: float) -> float:
    """Largest cost still counted as optimal for minimum ``value``."""
    if value <= ABS_TOL:
        return ABS_TOL
    return value * (1.0 + tol)


def strictly_decreasing(values: Sequence[float], tol: float = DEFAULT_TOL) -> bool:
    """True iff each value drops below its predecessor by a relative margin."""
    for prev, cur in zip(values, values[1:]):
        if not prev - cur > max(tol * prev, ABS_TOL):
            return False
    return True


@dataclass(frozen=True)
class ClusterSolution:
    """Optimal value and the family of optimal center sets.

    ``complete`` is False when the family is known to be only a sample of
    the optimal sets: ambient problems that are singular (some center can
    wander freely) or whose 1-D median cells are intervals.
    """

    value: float
    optima: SolutionFamily
    k_used: int
    exact: bool
    singular: bool
    per_k_values: tuple
    complete: bool = True
    interval_optima: bool = False
    method: str = ""
    notes: tuple = field(default=(), compare=False)

    @property
    def space(self) -> Space:
        return self.optima[0].space

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "k_used": self.k_used,
            "exact": self.exact,
            "singular": self.singular,
            "complete": self.complete,
            "interval_optima": self.interval_optima,
            "method": self.method,
            "per_k_values": list(self.per_k_values),
            "optima": self.optima.to_json(),
        }


def make_solution(per_k: Sequence[float], sets: Sequence[CenterSet], k: int, *, exact: bool,
                  tol: float, method: str, complete: bool = True,
                  interval: bool = False, ambient: bool = False, notes=()) -> ClusterSolution:
    per_k = tuple(float(v) for v in per_k)
    # enforce monotonicity against rounding in independently computed entries
    mono = []
    for v in per_k:
        mono.append(v if not mono else min(v, mono[-1]))
    singular = not strictly_decreasing(mono, tol)
    return ClusterSolution(
        value=mono[-1],
        optima=SolutionFamily.of(sets),
        k_used=k,
        exact=exact,
        singular=singular,
        per_k_values=tuple(mono),
        # a singular ambient problem has a free center: infinitely many optima
        complete=complete and not interval and not (ambient and singular),
        interval_optima=interval,
        method=method,
        notes=tuple(notes),
    )
