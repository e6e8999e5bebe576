"""Edge-disjoint demand routing on complete grid graphs K_t^n."""

from .demand import (
    AuxEdge,
    AuxGraph,
    DemandEdge,
    DemandGraph,
    choose_q,
    from_pairing,
    project,
    random_demand_multigraph,
    random_pairing,
    regularize,
    split_demands,
)
from .errors import (
    BaseSolverExhaustedError,
    ClaimViolationError,
    FormatError,
    GridpairError,
    InfeasibleBudgetError,
    SizeLimitError,
)
from .factorization import (
    LayerAssignment,
    Multigraph,
    Orientation,
    TwoFactor,
    bipartite_matching_decomposition,
    euler_orient,
    group_factors,
    two_factorization,
)
from .formats import emit_instance, emit_routing, parse_instance, parse_routing
from .grid import (
    GridSpec,
    Trail,
    Vertex,
    column_of,
    edge_count,
    edge_rank,
    edges,
    is_grid_edge,
    layer_of,
    lift_trail,
    vertex_from_rank,
    vertex_rank,
)
from .router import (
    RewrittenDemand,
    RouteDiagnostics,
    Routing,
    build_subproblems,
    rewrite,
    shorten_trail,
    solve,
    solve_complete,
    stitch,
)
from .verify import (
    StatsBlock,
    VerificationReport,
    Violation,
    degree_ratio,
    oracle_solve,
    verify,
)

__all__ = [
    "AuxEdge",
    "AuxGraph",
    "BaseSolverExhaustedError",
    "ClaimViolationError",
    "DemandEdge",
    "DemandGraph",
    "FormatError",
    "GridSpec",
    "GridpairError",
    "InfeasibleBudgetError",
    "LayerAssignment",
    "Multigraph",
    "Orientation",
    "RewrittenDemand",
    "RouteDiagnostics",
    "Routing",
    "SizeLimitError",
    "StatsBlock",
    "Trail",
    "TwoFactor",
    "VerificationReport",
    "Vertex",
    "Violation",
    "bipartite_matching_decomposition",
    "build_subproblems",
    "choose_q",
    "column_of",
    "degree_ratio",
    "edge_count",
    "edge_rank",
    "edges",
    "emit_instance",
    "emit_routing",
    "euler_orient",
    "from_pairing",
    "group_factors",
    "is_grid_edge",
    "layer_of",
    "lift_trail",
    "oracle_solve",
    "parse_instance",
    "parse_routing",
    "project",
    "random_demand_multigraph",
    "random_pairing",
    "regularize",
    "rewrite",
    "shorten_trail",
    "solve",
    "solve_complete",
    "split_demands",
    "stitch",
    "two_factorization",
    "verify",
    "vertex_from_rank",
    "vertex_rank",
]
