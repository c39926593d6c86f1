"""Two-photon driven qubit chains coupled to a bi-directional waveguide."""

from .hierarchy import (
    BLOCK_NAMES,
    ChainParams,
    DriveMode,
    HierarchyState,
    RhsEvaluator,
    coherent_term,
    cooperative_decay_term,
    drive_coupling,
    hierarchy_rhs,
    initial_state,
    liouvillian,
    pure_decay_term,
)
from .integrator import (
    Diagnostics,
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    diagnostics,
    integrate,
    rk4_step,
)
from .observables import (
    PopulationRecord,
    average_pairwise_concurrence,
    concurrence_pair,
    max_concurrence,
    pair_concurrences,
    populations,
    spin_flip,
    survival_time,
)
from .pulse import GaussianPulse

__version__ = "0.1.0"

from .config import ConfigError, ExperimentConfig, apply_overrides, dump_config, load_config, parse_config  # noqa: E402
from .presets import expand_preset, list_presets  # noqa: E402
from .runner import RunSummary, emit_csv, emit_summary_csv, run, run_many, summarize  # noqa: E402

__all__ = [
    "BLOCK_NAMES",
    "ChainParams",
    "ConfigError",
    "Diagnostics",
    "DriveMode",
    "ExperimentConfig",
    "GaussianPulse",
    "HierarchyState",
    "IntegrationError",
    "IntegratorConfig",
    "PopulationRecord",
    "RhsEvaluator",
    "RunSummary",
    "Trajectory",
    "apply_overrides",
    "dump_config",
    "emit_csv",
    "emit_summary_csv",
    "expand_preset",
    "list_presets",
    "load_config",
    "parse_config",
    "run",
    "run_many",
    "summarize",
    "average_pairwise_concurrence",
    "coherent_term",
    "concurrence_pair",
    "cooperative_decay_term",
    "diagnostics",
    "drive_coupling",
    "hierarchy_rhs",
    "initial_state",
    "integrate",
    "liouvillian",
    "max_concurrence",
    "pair_concurrences",
    "populations",
    "pure_decay_term",
    "rk4_step",
    "spin_flip",
    "survival_time",
]
