from schottky.theta.engine import (
    ThetaJetRaw,
    ThetaSettings,
    reduce_argument,
    theta,
    theta_jet,
    truncation_radius,
)
from schottky.theta.transformation import TransformReport, check_transformation

__all__ = [
    "ThetaJetRaw",
    "ThetaSettings",
    "TransformReport",
    "check_transformation",
    "reduce_argument",
    "theta",
    "theta_jet",
    "truncation_radius",
]
