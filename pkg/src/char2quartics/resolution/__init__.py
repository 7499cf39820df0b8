"""Explicit resolution of the pencil surfaces S and S' and the cover between them."""
from .cover import CoverTable, CurveImage, cover_table, q_refinement
from .engine import (BlowupResult, BlowupTree, ChartSurface, ExcCurve, blowup_step,
                     run_blowups, vanishing_order)
from .graph import IncidenceGraph
from .pencil import (Resolution, exceptional_multiplicities, incidence, resolve,
                     self_intersections)

__all__ = [
    "BlowupResult", "BlowupTree", "ChartSurface", "CoverTable", "CurveImage", "ExcCurve",
    "IncidenceGraph", "Resolution", "blowup_step", "cover_table", "exceptional_multiplicities",
    "incidence", "q_refinement", "resolve", "run_blowups", "self_intersections",
    "vanishing_order",
]
