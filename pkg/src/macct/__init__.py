"""Completion-time analysis for the two-user Gaussian multi-access channel.

Computes the achievable completion-time region, solves weighted-sum and
minimax completion-time problems in closed form, synthesizes time-sharing
schedules that achieve any feasible pair, and cross-checks every closed
form against an independent brute-force grid oracle.
"""

from .capacity import (
    corner_points,
    gamma,
    point_to_point_rate,
    region_contains,
    standard_capacity_region,
)
from .constrained import (
    ConstrainedRateQuery,
    RateDecomposition,
    clamp_transform,
    constrained_contains,
    constrained_slacks,
    decompose_rate,
)
from .ctregion import (
    Case,
    RegionDescription,
    boundary_polyline,
    build_region,
    classify_case,
    ct_contains,
    ct_contains_grid,
    ct_slacks,
    equal_time_vertex,
    map_rate_to_ct,
    outer_bound,
    point_c,
    region_description_contains,
)
from .optimize import (
    Thresholds,
    WeightedSumSolution,
    minimax,
    minimize_subregion,
    minimize_weighted_sum,
    objective_d,
    thresholds,
)
from .oracle import (
    GridSpec,
    OracleReport,
    default_grid,
    dominant_extreme_points,
    minimax_time_by_bisection,
    oracle_minimax,
    oracle_region_equivalence,
    oracle_weighted_min,
)
from .schedule import Phase, Schedule, ValidationReport, compose, synthesize, validate
from .types import (
    EPS_MEM,
    ChannelConfig,
    CompletionTimePair,
    ConsistencyError,
    ConvexPiece,
    HalfPlane,
    InfeasibleError,
    RatePair,
    TrafficLoad,
)

__version__ = "0.1.0"

__all__ = [
    "EPS_MEM",
    "Case",
    "ChannelConfig",
    "CompletionTimePair",
    "ConsistencyError",
    "ConstrainedRateQuery",
    "ConvexPiece",
    "GridSpec",
    "HalfPlane",
    "InfeasibleError",
    "OracleReport",
    "Phase",
    "RateDecomposition",
    "RatePair",
    "RegionDescription",
    "Schedule",
    "Thresholds",
    "TrafficLoad",
    "ValidationReport",
    "WeightedSumSolution",
    "boundary_polyline",
    "build_region",
    "clamp_transform",
    "classify_case",
    "compose",
    "constrained_contains",
    "constrained_slacks",
    "corner_points",
    "ct_contains",
    "ct_contains_grid",
    "ct_slacks",
    "decompose_rate",
    "default_grid",
    "dominant_extreme_points",
    "equal_time_vertex",
    "gamma",
    "map_rate_to_ct",
    "minimax",
    "minimax_time_by_bisection",
    "minimize_subregion",
    "minimize_weighted_sum",
    "objective_d",
    "oracle_minimax",
    "oracle_region_equivalence",
    "oracle_weighted_min",
    "outer_bound",
    "point_c",
    "point_to_point_rate",
    "region_contains",
    "region_description_contains",
    "standard_capacity_region",
    "synthesize",
    "thresholds",
    "validate",
]
