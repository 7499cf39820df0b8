"""Plane quartics and cubics over GF(2^m)."""
from .analysis import (ALL_BITANGENT, ALL_INFLECTIONAL, DEFAULT_MAX_EXT, MIXED, LineProfile,
                       SingularityReport, TangencyClass, enumerate_points, is_strange,
                       line_profile, multiplicity_and_cone, point_tangency, points_over,
                       singular_points, smooth_points, tangency_class, tangent_line)
from .curve import Line, PlaneCurveFq, Point, extension_degrees, join, meet

__all__ = [
    "ALL_BITANGENT", "ALL_INFLECTIONAL", "DEFAULT_MAX_EXT", "MIXED", "Line", "LineProfile",
    "PlaneCurveFq", "Point", "SingularityReport", "TangencyClass", "enumerate_points",
    "extension_degrees", "is_strange", "join", "line_profile", "meet", "multiplicity_and_cone",
    "point_tangency", "points_over", "singular_points", "smooth_points", "tangency_class",
    "tangent_line",
]
