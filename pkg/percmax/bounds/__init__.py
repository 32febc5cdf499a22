"""Closed-form bounds and explicit slow constructions."""

from .formulas import (
    FractionalMove,
    GeneralizedTriple,
    best_half_move_orders,
    f_upper,
    f_upper_max,
    fractional_dims,
    fractional_time,
    generalized_dims,
    generalized_time,
    half_move_order_total,
    half_move_pair_time,
    lower_bound_value,
    rect_asymptote,
)
from .constructions import (
    Cuboid,
    CuboidConstruction,
    PhasePlan,
    cuboid_construction,
    ddim_slow_set,
    diam_span_check,
    phase_plan,
    phase_times,
    slow_set,
    torus_slow_set,
)
from .report import BoundsRow, bounds_report, format_bounds_csv

__all__ = [
    "FractionalMove",
    "GeneralizedTriple",
    "best_half_move_orders",
    "f_upper",
    "f_upper_max",
    "fractional_dims",
    "fractional_time",
    "generalized_dims",
    "generalized_time",
    "half_move_order_total",
    "half_move_pair_time",
    "lower_bound_value",
    "rect_asymptote",
    "Cuboid",
    "CuboidConstruction",
    "PhasePlan",
    "cuboid_construction",
    "ddim_slow_set",
    "diam_span_check",
    "phase_plan",
    "phase_times",
    "slow_set",
    "torus_slow_set",
    "BoundsRow",
    "bounds_report",
    "format_bounds_csv",
]
