"""Exact solver over a finite candidate domain by exhaustive subset scan."""

from __future__ import annotations

from math import comb

import numpy as np

from .. import kernels
from ..errors import BudgetExceededError, EmptyDomainError, ValidationError
from ..measures import DiscreteMeasure
from ..metric import check_exponent
from ..sets import CenterSet
from .solution import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    Ambient,
    ClusterSolution,
    ExplicitFinite,
    SupportOfMeasure,
    check_k,
    check_tol,
    make_solution,
    optimality_bound,
)


def candidate_points(mu: DiscreteMeasure, R) -> list:
    if isinstance(R, SupportOfMeasure):
        return list(mu.atoms)
    if isinstance(R, ExplicitFinite):
        seen = {}
        for x in R.points:
            seen[mu.space.point(x)] = None
        cands = sorted(seen, key=mu.space.sort_key)
        if not cands:
            raise EmptyDomainError("candidate domain is empty")
        return cands
    if isinstance(R, Ambient):
        raise ValidationError("ambient domains are not finite; use solve_ambient or an exact ambient solver")
    raise ValidationError(f"unknown domain {R!r}")


def subset_count(ncand: int, k: int) -> int:
    return sum(comb(ncand, j) for j in range(1, min(k, ncand) + 1))


def solve_restricted(mu: DiscreteMeasure, k: int, R, p: float, tol: float = DEFAULT_TOL,
                     budget: int = DEFAULT_BUDGET) -> ClusterSolution:
    """Exact ``m_{k,p}(mu, R)`` and every optimal ``S`` within ``tol``.

    All subsets of the candidate domain with 1..k members are scanned, so
    the returned family is complete. Refuses with
    :class:`BudgetExceededError` rather than approximate when the number
    of subsets exceeds ``budget``.
    """
    k = check_k(k)
    p = check_exponent(p)
    tol = check_tol(tol)
    cands = candidate_points(mu, R)
    count = subset_count(len(cands), k)
    if count > budget:
        raise BudgetExceededError(
            f"{count} candidate subsets exceed the enumeration budget of {budget}; "
            "use the heuristic solver or raise the budget"
        )
    Dp = mu.space.pairwise(cands, mu.atoms) ** p
    w = np.asarray(mu.weights, dtype=float)
    best, _ = kernels.subset_scan(Dp, w, k, -1.0)
    per_k = np.minimum.accumulate(best)
    value = float(per_k[-1])
    _, hits = kernels.subset_scan(Dp, w, k, optimality_bound(value, tol))
    sets = [CenterSet.of(mu.space, [cands[i] for i in idx]) for idx, _ in hits]
    return make_solution(per_k, sets, k, exact=True, tol=tol, method="subset-scan")


def medoids(mu: DiscreteMeasure, k: int, p: float, tol: float = DEFAULT_TOL,
            budget: int = DEFAULT_BUDGET) -> ClusterSolution:
    """(k,p)-medoids: centers restricted to the support of ``mu``."""
    return solve_restricted(mu, k, SupportOfMeasure(), p, tol, budget)
