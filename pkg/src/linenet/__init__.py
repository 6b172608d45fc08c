"""Poisson line process cells and low-cost short-route spatial networks."""
from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND
from .cell import (
    ConvexCell,
    EstimateReport,
    Jm_asymptotic,
    Jm_quadrature,
    TwoPointGeometry,
    estimate_Jm_mc,
    perimeter,
    prob_no_separating,
    two_point_cell,
)
from .geom import Line, Point, Rect, Segment, intersect_lines, intersect_segments, separates, side_of
from .lineproc import LineProcessParams, LineSample, sample_disk, sample_tube_nonseparating
from .netbuild import BuildParams, Configuration, Layer, LengthAccounting, PlanarNetwork, build_network, planarize
from .search import SearchResult, SearchSpec, calibrate_thresholds, rejection_search
from .stats import PairSamplePlan, StatReport, equidist_cost, excess_stat, ratio_stat, route_length

__all__ = [
    "BACKEND", "BuildParams", "Configuration", "ConvexCell", "EstimateReport", "Jm_asymptotic",
    "Jm_quadrature", "Layer", "LengthAccounting", "Line", "LineProcessParams", "LineSample",
    "PairSamplePlan", "PlanarNetwork", "Point", "Rect", "SearchResult", "SearchSpec", "Segment",
    "StatReport", "TwoPointGeometry", "build_network", "calibrate_thresholds", "equidist_cost",
    "estimate_Jm_mc", "excess_stat", "intersect_lines", "intersect_segments", "perimeter",
    "planarize", "prob_no_separating", "ratio_stat", "rejection_search", "route_length",
    "sample_disk", "sample_tube_nonseparating", "separates", "side_of", "two_point_cell",
]
