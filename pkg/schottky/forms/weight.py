"""Check the automorphy f(gamma . Omega) = det(C Omega + D)^k f(Omega) of h_xi(phi)."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from schottky.core.characteristics import ThetaCharacteristic
from schottky.core.siegel import SiegelPoint
from schottky.core.symplectic import SymplecticInt, automorphy, in_gamma_2, in_gamma_4_8, sp_action_omega
from schottky.forms.modular import evaluate_h, invariant_degree, modular_weight
from schottky.theta.engine import ThetaSettings
from schottky.utils.errors import CharacteristicMoved

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightReport:
    """Comparison of h at gamma . Omega with the automorphy factor times h at Omega.

    ``advisory`` is set when gamma lies outside Gamma(4,8); such reports are
    informative only.
    """

    xi: ThetaCharacteristic
    xi_prime: ThetaCharacteristic
    invariant: str
    exponent: int
    det: complex
    transformed: complex
    expected: complex
    abs_deviation: float
    rel_deviation: float
    advisory: bool

    def passed(self, tol: float = 1e-8) -> bool:
        return bool(self.rel_deviation < tol)

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.to_dict(),
            "xi_prime": self.xi_prime.to_dict(),
            "invariant": self.invariant,
            "exponent": self.exponent,
            "det": {"re": self.det.real, "im": self.det.imag},
            "transformed": {"re": self.transformed.real, "im": self.transformed.imag},
            "expected": {"re": self.expected.real, "im": self.expected.imag},
            "abs_deviation": self.abs_deviation,
            "rel_deviation": self.rel_deviation,
            "advisory": self.advisory,
            "passed": self.passed(),
        }


def weight_check(
    omega: SiegelPoint,
    gamma: SymplecticInt,
    xi: ThetaCharacteristic,
    name: str = "S",
    s: ThetaSettings | None = None,
    xi_prime: ThetaCharacteristic | None = None,
) -> WeightReport:
    """Compare h_xi(phi)(gamma . Omega) with det(C Omega + D)^k h_xi'(phi)(Omega).

    Elements of Gamma(2) fix every characteristic, so xi' defaults to xi there;
    outside Gamma(2) the caller must name xi'.
    """
    degree = invariant_degree(omega, name)
    if xi_prime is None:
        if not in_gamma_2(gamma):
            raise CharacteristicMoved(
                f"gamma is not congruent to the identity mod 2 and may move {xi}; supply xi_prime",
                xi=str(xi),
            )
        xi_prime = xi

    weight = modular_weight(omega.g, degree)
    if weight.denominator != 1:
        raise ValueError(f"weight {weight} is not an integer")
    exponent = int(weight)

    factor, _ = automorphy(gamma, omega)
    det = complex(np.linalg.det(factor))
    image = sp_action_omega(gamma, omega)

    transformed = evaluate_h(xi, image, name, s).raw
    expected = det**exponent * evaluate_h(xi_prime, omega, name, s).raw
    deviation = abs(transformed - expected)
    reference = abs(expected)
    advisory = not in_gamma_4_8(gamma)

    report = WeightReport(
        xi=xi,
        xi_prime=xi_prime,
        invariant=name,
        exponent=exponent,
        det=det,
        transformed=transformed,
        expected=expected,
        abs_deviation=deviation,
        rel_deviation=deviation / reference if reference > 0 else deviation,
        advisory=advisory,
    )
    if advisory:
        logger.info(f"advisory weight check {xi} -> {xi_prime}: relative deviation {report.rel_deviation:.2e}")
    return report
