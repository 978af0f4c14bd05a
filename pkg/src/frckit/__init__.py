"""Frequency response characteristic (FRC) curves and fast nadir assessment.

The package builds, updates, and inverts a system's curve of steady-state
corrective power vs frequency deviation from unit-level governor data, and
predicts post-contingency frequency nadir with a clustered reduced-order
dynamic model validated against an in-repo per-unit reference simulator.
"""

__version__ = "0.1.0"

from .curve import (
    Breakpoint,
    PwlCurve,
    add,
    curve_to_csv,
    invert_monotone,
    make_curve,
    scale,
    simplify,
    subtract,
    zero_curve,
)
from .fleet import (
    Fleet,
    GenSpec,
    ModelType,
    SystemParams,
    Technology,
    Unit,
    apply_toggles,
    convert_to_renewable,
    generate_fleet,
    parse_fleet,
    serialize_fleet,
    validate_fleet,
)
from .frc import (
    AdequacyReport,
    BetaMetric,
    FrcCurve,
    SteadyStateResult,
    UnitFrc,
    assemble_system_frc,
    beta_metrics,
    build_load_damping_curve,
    build_unit_frc,
    headroom_adequacy,
    solve_steady_state,
    update_system_frc,
)
from .aggregation import (
    InertiaEstimate,
    ReducedModel,
    ResponderBlock,
    build_reduced_model,
    cluster_always_on,
    estimate_system_inertia,
    partition_fleet,
)
from .dynamics import (
    Contingency,
    NadirReport,
    SimConfig,
    Trajectory,
    block_derivative,
    build_per_unit_model,
    deadband_apply,
    extract_metrics,
    simulate,
    trajectory_to_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
