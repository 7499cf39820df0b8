"""Exact arithmetic: GF(2^m), polynomials and rational functions over it, power-basis
tests and truncated Laurent series."""
from .gf2m import GF2m, field, embedding, restriction, lift, conway_modulus
from .mpoly import MPoly, gcd, exact_div
from .ratfunc import BaseField, RatFunc, parse_element, format_element
from .powerbasis import decompose_by_power_basis, power_membership, span_membership, reassemble, is_power
from .series import LaurentSeries, series_expand, differential_valuation, INF, DEFAULT_PRECISION
from .kpoly import KPoly, Relations, solve_in_span, rank

__all__ = [
    "GF2m", "field", "embedding", "restriction", "lift", "conway_modulus",
    "MPoly", "gcd", "exact_div",
    "BaseField", "RatFunc", "parse_element", "format_element",
    "decompose_by_power_basis", "power_membership", "span_membership", "reassemble", "is_power",
    "LaurentSeries", "series_expand", "differential_valuation", "INF", "DEFAULT_PRECISION",
    "KPoly", "Relations", "solve_in_span", "rank",
]
