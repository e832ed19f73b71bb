"""Parallel multi-start 2opt and tabu-search heuristics for the QAP."""

from .backend import backend_name
from .core import (
    all_deltas,
    apply_move,
    delta_cost,
    enumerate_moves,
    exhaustive_solve,
    full_cost,
    random_permutation,
)
from .errors import (
    DomainError,
    IntegrityError,
    MalformedInstanceError,
    QapError,
    TokenParseError,
)
from .instance import (
    BestKnownRegistry,
    Instance,
    SolutionRecord,
    evaluate_cost,
    load_best_known,
    parse_instance,
    random_instance,
    read_solution,
    write_solution,
)
from .multistart import MultiStartResult, SearchConfig, run_multistart, run_start
from .report import RunReport, accuracy
from .rng import SplitMix64, derive_seed
from .tabu import (
    TabuState,
    TabuTrail,
    TenureInterval,
    is_admissible,
    replay_and_audit,
    run_tabu,
    sample_tenure,
    tabu_step,
    tenure_bounds,
    write_trail,
)
from .tuner import SweepPlan, ThreadConfig, enumerate_configs, make_sweep, validate_config
from .two_opt import TwoOptState, run_two_opt, two_opt_step

__version__ = "0.1.0"
