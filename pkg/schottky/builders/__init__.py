from schottky.builders.periods import (
    HyperellipticCurve,
    PeriodResult,
    QuadratureSettings,
    agm,
    elliptic_period_agm,
    hyperelliptic_periods,
)
from schottky.builders.random_points import ProductPoint, product_point, random_siegel

__all__ = [
    "HyperellipticCurve",
    "PeriodResult",
    "ProductPoint",
    "QuadratureSettings",
    "agm",
    "elliptic_period_agm",
    "hyperelliptic_periods",
    "product_point",
    "random_siegel",
]
