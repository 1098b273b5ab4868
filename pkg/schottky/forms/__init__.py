from schottky.forms.modular import (
    CUBIC_DEGENERATE,
    SINGULAR_ODD_THETA,
    ModularValue,
    calibrate_nonvanishing_floor,
    evaluate_h,
    modular_weight,
)
from schottky.forms.sweep import SweepReport, SweepSummary, asweep_odd, summarize, sweep_odd
from schottky.forms.weight import WeightReport, weight_check

__all__ = [
    "CUBIC_DEGENERATE",
    "SINGULAR_ODD_THETA",
    "ModularValue",
    "SweepReport",
    "SweepSummary",
    "WeightReport",
    "asweep_odd",
    "calibrate_nonvanishing_floor",
    "evaluate_h",
    "modular_weight",
    "summarize",
    "sweep_odd",
    "weight_check",
]
