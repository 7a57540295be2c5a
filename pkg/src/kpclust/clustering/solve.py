"""Dispatch to the exact solver that fits the (measure, domain) pair."""

from __future__ import annotations

from ..errors import BudgetExceededError
from ..measures import DiscreteMeasure
from ..metric import EuclideanSpace, FiniteSpace
from .dp1d import kmeans_1d_dp
from .oracle import ORACLE_MAX_ATOMS, partition_oracle
from .restricted import solve_restricted
from .solution import DEFAULT_BUDGET, DEFAULT_TOL, Ambient, ClusterSolution, ExplicitFinite


def solve_exact(mu: DiscreteMeasure, k: int, R, p: float, tol: float = DEFAULT_TOL,
                budget: int = DEFAULT_BUDGET, oracle_max_atoms: int = ORACLE_MAX_ATOMS) -> ClusterSolution:
    """Exact ``C_p(mu, k, R)`` by subset scan, interval DP or partition oracle.

    Raises :class:`BudgetExceededError` when no exact path fits the caps.
    """
    if not isinstance(R, Ambient):
        return solve_restricted(mu, k, R, p, tol, budget)
    if isinstance(mu.space, FiniteSpace):
        whole = ExplicitFinite(tuple(range(len(mu.space))))
        return solve_restricted(mu, k, whole, p, tol, budget)
    if isinstance(mu.space, EuclideanSpace) and mu.space.dim == 1:
        return kmeans_1d_dp(mu, k, p, tol)
    if len(mu) <= oracle_max_atoms:
        return partition_oracle(mu, k, p, tol, oracle_max_atoms)
    raise BudgetExceededError(
        f"no exact ambient solver for {len(mu)} atoms in dimension {mu.space.dim} "
        f"(partition oracle cap {oracle_max_atoms}); use the heuristic"
    )
