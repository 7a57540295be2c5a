from .dp1d import kmeans_1d_dp
from .elbow import (
    ElbowReport,
    default_k_max,
    delta2_m,
    elbow_from_curve,
    elbow_k,
    elbow_report,
    is_nonsingular,
    m_curve,
)
from .lloyd import solve_ambient
from .oracle import ORACLE_MAX_ATOMS, partition_oracle
from .restricted import medoids, solve_restricted
from .solution import (
    AMBIENT,
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    SUPPORT,
    Ambient,
    ClusterSolution,
    ExplicitFinite,
    SupportOfMeasure,
)
from .solve import solve_exact

__all__ = [
    "AMBIENT",
    "DEFAULT_BUDGET",
    "DEFAULT_TOL",
    "ORACLE_MAX_ATOMS",
    "SUPPORT",
    "Ambient",
    "ClusterSolution",
    "ElbowReport",
    "ExplicitFinite",
    "SupportOfMeasure",
    "default_k_max",
    "delta2_m",
    "elbow_from_curve",
    "elbow_k",
    "elbow_report",
    "is_nonsingular",
    "kmeans_1d_dp",
    "m_curve",
    "medoids",
    "partition_oracle",
    "solve_ambient",
    "solve_exact",
    "solve_restricted",
]
