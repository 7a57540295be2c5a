from .iid import (
    DEFAULT_N_GRID,
    ElbowResult,
    LDPResult,
    LDPRow,
    clopper_pearson,
    contaminated,
    population_elbow,
    run_continuity,
    run_elbow,
    run_iid,
    run_ldp,
)
from .mc import MCResult, MCTrial, MedoidPath, burn_in_tv_bound, run_mc, simulate
from .records import (
    CSV_COLUMNS,
    ExperimentRecord,
    count_inversions,
    family_distance,
    medians_by_n,
    records_csv,
    write_csv,
)
from .specs import (
    FORGET_LOG,
    FORGET_NONE,
    GaussianMixture,
    MarkovChainSpec,
    PopulationSpec,
    forgetting_schedule,
    three_state_chain,
    run_tasks,
    stream,
    worker_count,
)
