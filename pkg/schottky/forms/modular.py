"""Values of the modular forms h_xi(phi) built from the restricted cubic of an odd theta function.

For an odd characteristic xi and a relative invariant phi of degree d of
cubics in g - 1 variables,

    h_xi(phi)(Omega) = det(B)^p * phi(M_B),    p = 3d / (g - 1),

which is a Siegel modular form of weight d (g + 8) / (2 (g - 1)). In genus 4
with phi = S this is the weight-8 Schottky form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from schottky.builders.random_points import random_siegel
from schottky.core.characteristics import ThetaCharacteristic, characteristic_index, enumerate_characteristics
from schottky.core.siegel import SiegelPoint
from schottky.invariants.aronhold import DEGREES, cone_defect, invariant, scale_free
from schottky.jets.taylor import UNITARY, OddJet, odd_jet, restrict_cubic
from schottky.theta.engine import ThetaSettings
from schottky.utils.errors import GenusUnsupported, SingularOddTheta

logger = logging.getLogger(__name__)

SINGULAR_ODD_THETA = "singular_odd_theta"
CUBIC_DEGENERATE = "cubic_degenerate"


def modular_weight(g: int, degree: int) -> Fraction:
    """d (g + 8) / (2 (g - 1))."""
    if g < 2:
        raise GenusUnsupported("modular forms from restricted cubics need g >= 2", g=g)
    return Fraction(g + 8, 2 * (g - 1)) * degree


@dataclass(frozen=True)
class ModularValue:
    xi: ThetaCharacteristic
    xi_index: int
    invariant: str
    raw: complex
    scale_free: float
    weight: Fraction
    flags: tuple[str, ...] = ()
    cone_defect: float | None = None
    ell_norm: float = 0.0

    def to_dict(self) -> dict:
        weight = int(self.weight) if self.weight.denominator == 1 else str(self.weight)
        return {
            "xi_index": self.xi_index,
            "xi": self.xi.to_dict(),
            "invariant": self.invariant,
            "raw": {"re": self.raw.real, "im": self.raw.imag},
            "scale_free": self.scale_free,
            "weight": weight,
            "flags": list(self.flags),
            "cone_defect": self.cone_defect,
        }


def invariant_degree(omega: SiegelPoint, name: str) -> int:
    if name not in DEGREES:
        raise ValueError(f"unknown invariant {name!r}; expected one of {sorted(DEGREES)}")
    if omega.g != 4:
        raise GenusUnsupported(
            f"ternary invariant {name} needs genus 4, got g={omega.g}",
            g=omega.g,
            invariant=name,
        )
    return DEGREES[name]


def evaluate_h(
    xi: ThetaCharacteristic,
    omega: SiegelPoint,
    name: str = "S",
    s: ThetaSettings | None = None,
    extension: str | int = UNITARY,
    jet: OddJet | None = None,
) -> ModularValue:
    """det(B)^p * phi(M_B) for the odd theta function theta[xi] at Omega.

    The scale-free magnitude always refers to the unitary completion of l.
    A precomputed ``jet`` of the same (xi, Omega) may be passed to share the
    theta evaluation between invariants.
    """
    degree = invariant_degree(omega, name)
    weight = modular_weight(omega.g, degree)
    index = characteristic_index(xi, "odd") if xi.is_odd else -1

    if jet is None:
        try:
            jet = odd_jet(xi, omega, s)
        except SingularOddTheta as exc:
            logger.warning(f"h_xi({name}) at {xi}: odd theta singular at 0, value set to 0")
            return ModularValue(
                xi=xi,
                xi_index=index,
                invariant=name,
                raw=0j,
                scale_free=0.0,
                weight=weight,
                flags=(SINGULAR_ODD_THETA,),
                ell_norm=float(exc.diagnostics.get("ell_norm", 0.0)),
            )

    unitary = restrict_cubic(jet, UNITARY)
    value = invariant(unitary.m_bar, name)
    flags: tuple[str, ...] = ()
    magnitude = scale_free(value, unitary.m_bar, degree)
    if unitary.is_degenerate():
        flags = (CUBIC_DEGENERATE,)
        magnitude = 0.0

    if extension == UNITARY:
        raw = unitary.corrected(value, degree)
    else:
        other = restrict_cubic(jet, extension)
        raw = other.corrected(invariant(other.m_bar, name), degree)

    return ModularValue(
        xi=xi,
        xi_index=index,
        invariant=name,
        raw=raw,
        scale_free=magnitude,
        weight=weight,
        flags=flags,
        cone_defect=cone_defect(unitary.m_bar),
        ell_norm=float(np.max(np.abs(jet.ell))),
    )


def calibrate_nonvanishing_floor(
    batch: int = 100,
    seed: int = 0,
    name: str = "S",
    margin: float = 100.0,
    s: ThetaSettings | None = None,
) -> float:
    """Median scale-free value over a seeded batch of generic points, divided by ``margin``.

    Each point uses one seeded odd characteristic. The result can replace
    the conservative default ``settings.nonvanishing_floor``.
    """
    odd = enumerate_characteristics(4, "odd")
    rng = np.random.default_rng(seed)
    samples = []
    for offset in range(batch):
        omega = random_siegel(4, seed=seed + offset)
        xi = odd[int(rng.integers(len(odd)))]
        samples.append(evaluate_h(xi, omega, name, s).scale_free)
    floor = float(np.median(samples)) / margin
    logger.info(f"calibrated nonvanishing floor for {name}: {floor:.3e} over {batch} points")
    return floor
