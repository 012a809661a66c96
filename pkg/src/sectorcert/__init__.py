"""Stability certification for linear plants driven through odd-function
wrappers around a fixed linear gain.

The pipeline certifies sector intervals for the wrapper slope by solving
vertex LMIs, chains intervals to widen the certified sector, converts the
sector into a state-space validity region, an admissible initial ball, a
settling-time bound, and an ultimate bound, and cross-validates everything
against fixed-step ODE simulation.
"""

from ._kernels import JIT_AVAILABLE, JIT_ENABLED, backend_name
from .certify import (
    Aggregates,
    Certificate,
    ComparisonRecord,
    IntervalCertificate,
    SearchOptions,
    certify_componentwise,
    certify_scalar,
    compare_report,
    compute_aggregates,
    multistep_search,
    settling_time,
    ultimate_bound,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    EmptyRegion,
    Infeasible,
    InvalidParameter,
    NoFeasibleInterval,
    NumericalFailure,
    SectorCertError,
    Uncontrollable,
    VertexBudgetExceeded,
    ZeroGainSum,
)
from .lmi import (
    LMISolution,
    SolveOptions,
    VertexLMI,
    assemble,
    assemble_block,
    clear_solution_log,
    solution_log,
    solve_feasibility,
    verify,
    vertex_set,
)
from .model import ControlLaw, Gain, Plant, closed_loop_matrix, validate_plant
from .sector import (
    OddFunction,
    SlopeProfile,
    eval_phi,
    sector_region,
    sector_region_scalar,
    slope,
    slope_at_origin,
)
from .sim import (
    Disturbance,
    Trajectory,
    empirical_ultimate_bound,
    lyapunov_trace,
    simulate,
    splitmix64_stream,
    time_to_ball,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregates",
    "Certificate",
    "ComparisonRecord",
    "ConfigError",
    "ControlLaw",
    "DimensionMismatch",
    "Disturbance",
    "EmptyRegion",
    "Gain",
    "Infeasible",
    "IntervalCertificate",
    "InvalidParameter",
    "JIT_AVAILABLE",
    "JIT_ENABLED",
    "LMISolution",
    "NoFeasibleInterval",
    "NumericalFailure",
    "OddFunction",
    "Plant",
    "SearchOptions",
    "SectorCertError",
    "SlopeProfile",
    "SolveOptions",
    "Trajectory",
    "Uncontrollable",
    "VertexBudgetExceeded",
    "VertexLMI",
    "ZeroGainSum",
    "assemble",
    "assemble_block",
    "backend_name",
    "certify_componentwise",
    "certify_scalar",
    "clear_solution_log",
    "closed_loop_matrix",
    "compare_report",
    "compute_aggregates",
    "empirical_ultimate_bound",
    "eval_phi",
    "lyapunov_trace",
    "multistep_search",
    "sector_region",
    "sector_region_scalar",
    "settling_time",
    "simulate",
    "slope",
    "slope_at_origin",
    "solution_log",
    "solve_feasibility",
    "splitmix64_stream",
    "time_to_ball",
    "ultimate_bound",
    "validate_plant",
    "verify",
    "vertex_set",
]
