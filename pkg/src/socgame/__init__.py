"""Evolutionary dynamics of online/offline social participation.

Four strategies (offline-only, online-uncivil, online-polite, isolation)
compete under replicator dynamics on the 3-simplex.  The package provides:

* closed-form admissibility checks, Nash vertices and dominance relations,
* the replicator flow and its Lotka-Volterra conjugate, with a
  simplex-preserving adaptive integrator,
* analytic classification of every boundary face's dynamic regime and of the
  global attractor set, cross-checkable against a numeric Jacobian oracle,
* welfare ranking of the attractors (isolation is always strictly worst),
* Monte Carlo basin-of-attraction estimates,
* a CLI (``socgame``) with JSON/CSV/SVG reporting.
"""

from .basins import BasinReport, estimate_basins, sample_simplex
from .classify import (
    EdgeRegime,
    InfeasibleLocationError,
    NonStationaryPointError,
    NormalizedMatrix,
    RegimeReport,
    StationaryState,
    classify_edge_SH,
    classify_edge_SN,
    classify_edge_SO,
    classify_edge_SP,
    classify_global,
    edge_interior_states,
    face_interior_state,
    face_states,
    full_interior_state,
    normalize_matrix,
    numeric_jacobian,
    vertex_eigensigns,
)
from .dynamics import (
    ChartDomainError,
    IntegrationError,
    IntegratorConfig,
    LVState,
    Trajectory,
    face_rhs,
    find_attractor,
    from_lv,
    integrate,
    lv_rhs_2d,
    lv_rhs_3d,
    lv_states_at,
    match_attractor,
    replicator_rhs,
    states_at,
    to_lv,
)
from .model import (
    DEFAULT_TOL,
    STRATEGIES,
    DegenerateParameterError,
    InvalidParameterError,
    Params,
    SimplexState,
    ValidationReport,
    average_payoff,
    coexistence_payoff,
    dominance_relations,
    nash_vertices,
    payoff_matrix,
    payoff_vector,
    validate,
)
from .welfare import OrderingViolationError, WelfareReport, stationary_payoff, welfare_report

__version__ = "0.1.0"

__all__ = [
    "BasinReport",
    "ChartDomainError",
    "IntegrationError",
    "DEFAULT_TOL",
    "DegenerateParameterError",
    "EdgeRegime",
    "InfeasibleLocationError",
    "IntegratorConfig",
    "InvalidParameterError",
    "LVState",
    "NonStationaryPointError",
    "NormalizedMatrix",
    "OrderingViolationError",
    "Params",
    "RegimeReport",
    "STRATEGIES",
    "SimplexState",
    "StationaryState",
    "Trajectory",
    "ValidationReport",
    "WelfareReport",
    "average_payoff",
    "classify_edge_SH",
    "classify_edge_SN",
    "classify_edge_SO",
    "classify_edge_SP",
    "classify_global",
    "coexistence_payoff",
    "dominance_relations",
    "edge_interior_states",
    "estimate_basins",
    "face_interior_state",
    "face_rhs",
    "face_states",
    "find_attractor",
    "from_lv",
    "full_interior_state",
    "integrate",
    "lv_rhs_2d",
    "lv_rhs_3d",
    "lv_states_at",
    "match_attractor",
    "nash_vertices",
    "normalize_matrix",
    "numeric_jacobian",
    "payoff_matrix",
    "payoff_vector",
    "replicator_rhs",
    "sample_simplex",
    "stationary_payoff",
    "states_at",
    "to_lv",
    "validate",
    "vertex_eigensigns",
    "welfare_report",
]
