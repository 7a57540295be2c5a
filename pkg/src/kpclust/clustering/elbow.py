"""Value curves, second differences, the elbow rule and non-singularity."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from ..errors import ValidationError
from ..measures import DiscreteMeasure
from .solution import ABS_TOL, AMBIENT, DEFAULT_TOL, check_k, strictly_decreasing
from .solve import solve_exact

log = logging.getLogger(__name__)

DEFAULT_TIE_TOL = 1e-9
MAX_DEFAULT_K = 10


def default_k_max(mu: DiscreteMeasure) -> int:
    return max(2, min(len(mu), MAX_DEFAULT_K))


def m_curve(mu: DiscreteMeasure, k_max: int, R=AMBIENT, p: float = 2.0,
            tol: float = DEFAULT_TOL) -> list[float]:
    """``[m_1, ..., m_{k_max}]`` from one exact solve at ``k_max``."""
    return list(solve_exact(mu, check_k(k_max), R, p, tol).per_k_values)


def delta2_m(m_values: Sequence[float]) -> list[float]:
    """Second differences ``m_{k+1} + m_{k-1} - 2 m_k`` for ``k = 1..len-1``, with ``m_0 = 0``."""
    m = [float(v) for v in m_values]
    if len(m) < 2:
        raise ValidationError("need at least m_1 and m_2 for second differences")
    padded = [0.0] + m
    return [padded[k + 1] + padded[k - 1] - 2.0 * padded[k] for k in range(1, len(m))]


@dataclass(frozen=True)
class ElbowReport:
    k: int
    m_curve: tuple
    delta2: tuple
    tail_valid: bool
    tail_bound: float
    delta2_at_k_max: float | None = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "m_curve": list(self.m_curve),
            "delta2": list(self.delta2),
            "tail_valid": self.tail_valid,
            "tail_bound": self.tail_bound,
            "delta2_at_k_max": self.delta2_at_k_max,
        }


def elbow_from_curve(m: Sequence[float], tie_tol: float = DEFAULT_TIE_TOL) -> ElbowReport:
    """Smallest maximiser of the second differences of a finite value curve.

    The curve stops at ``k_max = len(m)``, so the second differences at
    ``k >= k_max`` are unknown. They are bounded by
    ``max(m_{k_max-1} - m_{k_max}, m_{k_max})`` (the curve is nonnegative
    and nonincreasing); the choice is certified (``tail_valid``) when the
    observed maximum beats that bound. A curve that has reached zero is
    known exactly beyond ``k_max`` and is always certified.
    """
    m = [float(v) for v in m]
    d2 = delta2_m(m)
    scan = list(d2)
    at_k_max = None
    if m[-1] <= ABS_TOL:
        at_k_max = m[-2]  # m_{k_max + 1} = 0 as well, and all later terms vanish
        scan.append(at_k_max)
        tail_bound = 0.0
        valid = True
    else:
        tail_bound = max(m[-2] - m[-1], m[-1])
        valid = max(d2) > tail_bound + tie_tol
    top = max(scan)
    k = next(i for i, v in enumerate(scan, start=1) if v >= top - tie_tol)
    return ElbowReport(k, tuple(m), tuple(d2), valid, tail_bound, at_k_max)


def elbow_report(mu: DiscreteMeasure, k_max: int | None = None, p: float = 2.0,
                 tie_tol: float = DEFAULT_TIE_TOL, R=AMBIENT, tol: float = DEFAULT_TOL) -> ElbowReport:
    if k_max is None:
        k_max = default_k_max(mu)
    if check_k(k_max) < 2:
        raise ValidationError("k_max must be >= 2")
    return elbow_from_curve(m_curve(mu, k_max, R, p, tol), tie_tol)


def elbow_k(mu: DiscreteMeasure, k_max: int | None = None, p: float = 2.0,
            tie_tol: float = DEFAULT_TIE_TOL, R=AMBIENT) -> int:
    rep = elbow_report(mu, k_max, p, tie_tol, R)
    if not rep.tail_valid:
        log.warning("elbow scan up to k=%d not certified; second differences beyond it may be larger",
                    len(rep.m_curve))
    return rep.k


def is_nonsingular(mu: DiscreteMeasure, k: int, R=AMBIENT, p: float = 2.0,
                   tol: float = DEFAULT_TOL) -> bool:
    """True iff ``m_1 > m_2 > ... > m_k`` with relative margin ``tol`` at each step."""
    return strictly_decreasing(m_curve(mu, k, R, p, tol), tol)
