"""Dynamic coalitional TU games with decentralized projection-based bargaining.

Networked players repeatedly mix their proposed allocations with their
neighbors' proposals through doubly stochastic weights and project the mix
onto their coalition-constraint sets, converging to the core of the
worst-case game (robust mode) or of the long-run average game (average
mode). The package provides the game/polyhedron primitives, exact
projections, schedule diagnostics, the bargaining steppers, seeded value
generators, and a Monte Carlo harness with CSV export.
"""

from .errors import (
    AssumptionViolationError,
    CoalitionError,
    ConfigurationError,
    InfeasibleSetError,
)
from .game import (
    CharacteristicFunction,
    CoalitionId,
    PolyhedronSpec,
    ValueBounds,
    bounding_set,
    coalition_members,
    core_constraints,
    core_is_nonempty,
    is_in_core,
    robust_characteristic,
    running_average,
)
from .geometry import (
    ProjectionResult,
    distance_to,
    enumerate_vertices,
    lemma1_ratio,
    project_affine,
    project_point,
    project_polyhedron,
)
from .graphs import (
    GraphFrame,
    GraphSchedule,
    RateBoundReport,
    minimal_connectivity_window,
    phi_product,
    rate_bound_check,
    validate_connectivity,
    validate_weights,
)
from .harness import (
    AggregateSeries,
    CriterionVerdict,
    ExperimentConfig,
    ExperimentResult,
    RunReport,
    check_acceptance,
    check_directory,
    export_csv,
    load_config,
    preset_config,
    rotating_pair_schedule,
    run_experiment,
    scenario_bounds,
    validate_config,
)
from .protocol import (
    AllocationState,
    RunTrace,
    StepRecord,
    corner_proposals,
    lyapunov_series,
    run,
    step_average,
    step_robust,
)
from .stochastic import (
    SeededStream,
    ValueProcessSpec,
    draw_robust_coinflip,
    draw_supply_chain,
    draw_uniform,
    incidence_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolationError",
    "CoalitionError",
    "ConfigurationError",
    "InfeasibleSetError",
    "CharacteristicFunction",
    "CoalitionId",
    "PolyhedronSpec",
    "ValueBounds",
    "bounding_set",
    "coalition_members",
    "core_constraints",
    "core_is_nonempty",
    "is_in_core",
    "robust_characteristic",
    "running_average",
    "ProjectionResult",
    "distance_to",
    "enumerate_vertices",
    "lemma1_ratio",
    "project_affine",
    "project_point",
    "project_polyhedron",
    "GraphFrame",
    "GraphSchedule",
    "RateBoundReport",
    "minimal_connectivity_window",
    "phi_product",
    "rate_bound_check",
    "validate_connectivity",
    "validate_weights",
    "AggregateSeries",
    "CriterionVerdict",
    "ExperimentConfig",
    "ExperimentResult",
    "RunReport",
    "check_acceptance",
    "check_directory",
    "export_csv",
    "load_config",
    "preset_config",
    "rotating_pair_schedule",
    "run_experiment",
    "scenario_bounds",
    "validate_config",
    "AllocationState",
    "RunTrace",
    "StepRecord",
    "corner_proposals",
    "lyapunov_series",
    "run",
    "step_average",
    "step_robust",
    "SeededStream",
    "ValueProcessSpec",
    "draw_robust_coinflip",
    "draw_supply_chain",
    "draw_uniform",
    "incidence_matrix",
]
