"""Exact tests of the instrumental-variable model for discrete distributions."""

from ._core import (
    CapacityError,
    CondDist,
    ConsistencyError,
    Error,
    ParseError,
    RangeError,
    ShapeError,
    UnboundedError,
    count,
    finite_difference,
    index,
    lp_feasible,
    nontrivial_facets,
    pearl_statistic,
    pearl_suite,
    run_suite,
    sample,
    sufficiency_check,
    theorem8_statistic,
    variations,
    vertices,
)

__all__ = [
    "CapacityError",
    "CondDist",
    "ConsistencyError",
    "Error",
    "ParseError",
    "RangeError",
    "ShapeError",
    "UnboundedError",
    "count",
    "finite_difference",
    "index",
    "lp_feasible",
    "nontrivial_facets",
    "pearl_statistic",
    "pearl_suite",
    "run_suite",
    "sample",
    "sufficiency_check",
    "theorem8_statistic",
    "variations",
    "vertices",
]
