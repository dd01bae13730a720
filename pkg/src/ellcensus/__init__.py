"""Prime-order statistics for elliptic curves over prime fields."""

from .census import CensusRecord, CensusReport, brun_partial_sum, measure_sum, predicted_count, run_census
from .curve import CurveFp, CurveQ, add, enumerate_points, reduce, scalar_mul
from .density import delta_quartic_twist, delta_serre, koblitz_constant
from .errors import EllCensusError
from .lseries import an_table, ap_coefficient, q_expansion_text
from .order import group_order, group_structure, order_bsgs, order_exhaustive, point_order
from .registry import get_curve, load_registry

__version__ = "0.1.0"

__all__ = [
    "CensusRecord",
    "CensusReport",
    "CurveFp",
    "CurveQ",
    "EllCensusError",
    "add",
    "an_table",
    "ap_coefficient",
    "brun_partial_sum",
    "delta_quartic_twist",
    "delta_serre",
    "enumerate_points",
    "get_curve",
    "group_order",
    "group_structure",
    "koblitz_constant",
    "load_registry",
    "measure_sum",
    "order_bsgs",
    "order_exhaustive",
    "point_order",
    "predicted_count",
    "q_expansion_text",
    "reduce",
    "run_census",
    "scalar_mul",
]
