"""Exact (k,p)-means, medoids and the elbow method on discrete measures,
with seeded experiments on the consistency of their optimal solution sets."""

__version__ = "0.1.0"

from .clustering import (
    AMBIENT,
    SUPPORT,
    ClusterSolution,
    ElbowReport,
    ExplicitFinite,
    delta2_m,
    elbow_k,
    elbow_report,
    is_nonsingular,
    m_curve,
    medoids,
    solve_ambient,
    solve_exact,
    solve_restricted,
)
from .errors import KPClustError, RefusalError, ValidationError
from .kernels import BACKEND
from .measures import (
    DiscreteMeasure,
    cluster_cost,
    dirac,
    empirical,
    forgetful_empirical,
    kl_divergence,
    mixture,
    support,
    tv_distance,
    uniform,
)
from .metric import EuclideanSpace, FiniteSpace, distance, peter_paul_constant, power_distance
from .sets import (
    CenterSet,
    SolutionFamily,
    directed_hausdorff,
    hausdorff,
    point_to_set,
    solution_set_distance,
    tail_li,
    tail_ls,
)

__all__ = [
    "AMBIENT",
    "BACKEND",
    "SUPPORT",
    "CenterSet",
    "ClusterSolution",
    "DiscreteMeasure",
    "ElbowReport",
    "EuclideanSpace",
    "ExplicitFinite",
    "FiniteSpace",
    "KPClustError",
    "RefusalError",
    "SolutionFamily",
    "ValidationError",
    "cluster_cost",
    "delta2_m",
    "dirac",
    "directed_hausdorff",
    "distance",
    "elbow_k",
    "elbow_report",
    "empirical",
    "forgetful_empirical",
    "hausdorff",
    "is_nonsingular",
    "kl_divergence",
    "m_curve",
    "medoids",
    "mixture",
    "peter_paul_constant",
    "point_to_set",
    "power_distance",
    "solution_set_distance",
    "solve_ambient",
    "solve_exact",
    "solve_restricted",
    "support",
    "tail_li",
    "tail_ls",
    "tv_distance",
    "uniform",
]
