"""Numerical check of the theta transformation law on Gamma(4,8)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from schottky.core.characteristics import ThetaCharacteristic
from schottky.core.siegel import SiegelPoint
from schottky.core.symplectic import SymplecticInt, automorphy, in_gamma_4_8, sp_action_omega
from schottky.theta.engine import ThetaSettings, theta
from schottky.utils.errors import DegenerateSample

logger = logging.getLogger(__name__)

THETA_FLOOR = 1e-13


@dataclass(frozen=True)
class TransformReport:
    """Outcome of comparing theta at gamma.(z, Omega) with the automorphy factor times theta at (z, Omega).

    ``ratio_mean`` estimates det(C Omega + D)^(1/2) including its sign; only its
    square is compared with the determinant.
    """

    xi: ThetaCharacteristic
    det: complex
    ratio_mean: complex
    constancy: float
    det_residual: float
    relative_constancy: float
    relative_det_residual: float
    samples_used: int
    samples_skipped: int
    condition: float
    ratios: list[complex] = field(default_factory=list, repr=False)

    def passed(self, tol: float = 1e-8) -> bool:
        return bool(self.relative_constancy < tol and self.relative_det_residual < tol)

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.to_dict(),
            "det": {"re": self.det.real, "im": self.det.imag},
            "ratio_mean": {"re": self.ratio_mean.real, "im": self.ratio_mean.imag},
            "constancy": self.constancy,
            "det_residual": self.det_residual,
            "relative_constancy": self.relative_constancy,
            "relative_det_residual": self.relative_det_residual,
            "samples_used": self.samples_used,
            "samples_skipped": self.samples_skipped,
            "condition": self.condition,
            "passed": self.passed(),
        }


def sample_points(g: int, count: int, seed: int, radius: float = 0.25) -> np.ndarray:
    """Complex sample points with real and imaginary parts uniform in [-radius, radius]."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-radius, radius, size=(count, g)) + 1j * rng.uniform(-radius, radius, size=(count, g))


def check_transformation(
    xi: ThetaCharacteristic,
    gamma: SymplecticInt,
    omega: SiegelPoint,
    sample_count: int = 8,
    s: ThetaSettings | None = None,
    seed: int = 0,
) -> TransformReport:
    """Sample r(z) = theta(z_hat, Omega_hat) / (exp(pi i Q(z)) theta(z, Omega)) and summarize it."""
    if not in_gamma_4_8(gamma):
        raise ValueError("transformation checks are restricted to Gamma(4,8)")
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    s = ThetaSettings.from_settings() if s is None else s

    factor, condition = automorphy(gamma, omega)
    det = complex(np.linalg.det(factor))
    omega_hat = sp_action_omega(gamma, omega)
    c_matrix = gamma.C.astype(np.float64)

    ratios: list[complex] = []
    skipped = 0
    for z in sample_points(omega.g, sample_count, seed):
        base = theta(xi, z, omega, s)
        if abs(base) < THETA_FLOOR:
            skipped += 1
            continue
        z_hat = np.linalg.solve(factor.T, z)
        quadratic = z @ np.linalg.solve(factor, c_matrix @ z)
        ratios.append(theta(xi, z_hat, omega_hat, s) / (np.exp(1j * np.pi * quadratic) * base))

    if not ratios:
        raise DegenerateSample(
            f"all {sample_count} sampled theta values are below {THETA_FLOOR:.0e}",
            sample_count=sample_count,
            seed=seed,
        )

    values = np.array(ratios)
    mean = complex(np.mean(values))
    constancy = float(np.max(np.abs(values - mean)))
    det_residual = abs(mean * mean - det)
    scale = max(abs(det), 1e-300)
    report = TransformReport(
        xi=xi,
        det=det,
        ratio_mean=mean,
        constancy=constancy,
        det_residual=det_residual,
        relative_constancy=constancy / np.sqrt(scale),
        relative_det_residual=det_residual / scale,
        samples_used=len(ratios),
        samples_skipped=skipped,
        condition=condition,
        ratios=ratios,
    )
    logger.debug(f"transformation check {xi}: constancy {constancy:.2e}, det residual {det_residual:.2e}")
    return report
