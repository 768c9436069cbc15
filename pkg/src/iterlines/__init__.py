"""Exact iteration of the line-intersection operator on planar point sets."""
from .classify import Configuration, Kind, OrdinaryLine, OrdinaryStatus, classify, is_fixed, ordinary_line
from .closure import (
    Budget,
    BudgetExceeded,
    GrowthStats,
    OrderResult,
    PointSet,
    growth_stats,
    iterate,
    order,
    spanned_lines,
    t_step,
)
from .density import (
    Approximation,
    FiniteOrderError,
    ShrinkSequence,
    TriangleWitness,
    approximate_point,
    cevian_shrink_step,
    cevian_triangle,
    shrink_to_radius,
    triangle_with_interior_point,
)
from .kernel import Affine, DegenerateError, Line, LineRelation, Mat2, Point, Position, intersect, line_through
from .rational import (
    NormalMap,
    ReachError,
    Slope,
    TrapezoidQuadruple,
    dyadic_points,
    find_trapezoid,
    midpoint_quad,
    normalize_map,
    reach,
    six_point_reach,
)
from .trace import ConstructionTrace, TraceStep, VerifyResult, dumps, loads, verify_trace

__all__ = [
    "Affine",
    "approximate_point",
    "Approximation",
    "Budget",
    "BudgetExceeded",
    "cevian_shrink_step",
    "cevian_triangle",
    "classify",
    "Configuration",
    "ConstructionTrace",
    "DegenerateError",
    "dumps",
    "dyadic_points",
    "find_trapezoid",
    "FiniteOrderError",
    "growth_stats",
    "GrowthStats",
    "intersect",
    "is_fixed",
    "iterate",
    "Kind",
    "Line",
    "line_through",
    "LineRelation",
    "loads",
    "Mat2",
    "midpoint_quad",
    "normalize_map",
    "NormalMap",
    "order",
    "OrderResult",
    "ordinary_line",
    "OrdinaryLine",
    "OrdinaryStatus",
    "Point",
    "PointSet",
    "Position",
    "reach",
    "ReachError",
    "shrink_to_radius",
    "ShrinkSequence",
    "six_point_reach",
    "Slope",
    "spanned_lines",
    "t_step",
    "TraceStep",
    "TrapezoidQuadruple",
    "triangle_with_interior_point",
    "TriangleWitness",
    "verify_trace",
    "VerifyResult",
]
