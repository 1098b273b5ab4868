"""Period matrices of hyperelliptic curves y^2 = prod (x - e_i) with real branch points.

Conventions
-----------
The branch points e_1 < ... < e_{2g+2} are first moved affinely to [-1, 1].
y is the product of principal square roots sqrt(x - e_i), evaluated as the
limit from the upper half plane, so on the real axis

    y(x) = i^{#(e_i > x)} * sqrt(|P(x)|).

The cuts are [e_{2j-1}, e_{2j}], j = 1..g+1. The cycle a_j encircles cut j,
and b_i crosses the gaps between cut i and cut g+1. Each integral over a cut
or a gap is an integral with inverse square root singularities at both ends
and is computed by Gauss-Chebyshev quadrature after x = c + r cos(theta).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev

from schottky.config import settings
from schottky.core.siegel import SiegelPoint, validate_siegel
from schottky.utils.errors import (
    NearDegenerateGaps,
    NotPositive,
    NotSymmetric,
    QuadratureDivergence,
    SymplecticBasisNotFound,
)

logger = logging.getLogger(__name__)

PERIOD_SYM_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureSettings:
    nodes: int = 64
    max_nodes: int = 4096
    tol: float = 1e-13

    def __post_init__(self) -> None:
        if self.nodes < 2 or self.max_nodes < self.nodes:
            raise ValueError("need 2 <= nodes <= max_nodes")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    @classmethod
    def from_settings(cls, **overrides) -> QuadratureSettings:
        values = {"nodes": settings.quad_nodes, "max_nodes": settings.quad_max_nodes, "tol": settings.quad_tol}
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass(frozen=True)
class HyperellipticCurve:
    branch_points: tuple[float, ...]

    def __post_init__(self) -> None:
        points = self.branch_points
        if len(points) < 4 or len(points) % 2:
            raise ValueError("need an even number (at least 4) of branch points")
        gaps = np.diff(np.asarray(points, dtype=np.float64))
        if np.any(gaps <= 0):
            raise ValueError("branch points must be strictly increasing")
        if np.min(gaps) <= settings.gap_tol:
            raise NearDegenerateGaps(
                f"smallest gap between branch points is {np.min(gaps):.3e}",
                min_gap=float(np.min(gaps)),
                gap_tol=settings.gap_tol,
            )

    @classmethod
    def from_points(cls, points) -> HyperellipticCurve:
        return cls(tuple(float(x) for x in points))

    @property
    def genus(self) -> int:
        return (len(self.branch_points) - 2) // 2

    def normalized(self) -> HyperellipticCurve:
        """The affinely equivalent curve with branch points spanning [-1, 1]."""
        points = np.asarray(self.branch_points)
        center = 0.5 * (points[0] + points[-1])
        half_width = 0.5 * (points[-1] - points[0])
        return HyperellipticCurve(tuple(float(x) for x in (points - center) / half_width))

    def to_dict(self) -> dict:
        return {"branch_points": list(self.branch_points)}


@dataclass(frozen=True, eq=False)
class PeriodResult:
    omega: SiegelPoint
    a_periods: np.ndarray
    b_periods: np.ndarray
    symmetry_residual: float
    quadrature_error_estimate: float
    basis: str
    nodes: int

    def to_dict(self) -> dict:
        return {
            "g": self.omega.g,
            "re": self.omega.real.tolist(),
            "im": self.omega.imag.tolist(),
            "a_periods": {"re": self.a_periods.real.tolist(), "im": self.a_periods.imag.tolist()},
            "b_periods": {"re": self.b_periods.real.tolist(), "im": self.b_periods.imag.tolist()},
            "symmetry_residual": self.symmetry_residual,
            "quadrature_error_estimate": self.quadrature_error_estimate,
            "basis": self.basis,
            "nodes": self.nodes,
            "lambda_min": self.omega.lambda_min,
        }


@lru_cache(maxsize=16)
def _chebyshev_rule(count: int) -> tuple[np.ndarray, np.ndarray]:
    return chebyshev.chebgauss(count)


def _interval_moments(points: np.ndarray, left: int, genus: int, count: int) -> np.ndarray:
    """int_{e_left}^{e_left+1} x^k / sqrt|P(x)| dx for k = 0..g-1."""
    nodes, weights = _chebyshev_rule(count)
    start, stop = points[left], points[left + 1]
    center, radius = 0.5 * (start + stop), 0.5 * (stop - start)
    x = center + radius * nodes

    others = np.delete(points, [left, left + 1])
    # (x - start)(stop - x) = r^2 sin^2(theta) cancels against dx = -r sin(theta) dtheta.
    remainder = np.sqrt(np.abs(np.prod(x[:, None] - others[None, :], axis=1)))
    powers = x[:, None] ** np.arange(genus)[None, :]
    return weights @ (powers / remainder[:, None])


def _all_moments(points: np.ndarray, genus: int, quad: QuadratureSettings) -> tuple[np.ndarray, float, int]:
    """Moments over every interval between consecutive branch points, with node doubling."""
    intervals = len(points) - 1
    count = quad.nodes
    previous = np.array([_interval_moments(points, i, genus, count) for i in range(intervals)])
    while True:
        count *= 2
        current = np.array([_interval_moments(points, i, genus, count) for i in range(intervals)])
        estimate = float(np.max(np.abs(current - previous) / np.maximum(1.0, np.abs(current))))
        logger.debug(f"period quadrature with {count} nodes: change {estimate:.2e}")
        if estimate <= quad.tol:
            return current, estimate, count
        if 2 * count > quad.max_nodes:
            raise QuadratureDivergence(
                f"period integrals did not settle below {quad.tol:.1e} with {count} nodes",
                estimate=estimate,
                nodes=count,
            )
        previous = current


def _candidate_bases(gap_cycles: np.ndarray) -> list[tuple[str, np.ndarray]]:
    upper = np.cumsum(gap_cycles[::-1], axis=0)[::-1]
    lower = np.cumsum(gap_cycles, axis=0)
    return [
        ("upper", upper),
        ("upper-reversed", -upper),
        ("lower", lower),
        ("lower-reversed", -lower),
    ]


def hyperelliptic_periods(curve: HyperellipticCurve, quad: QuadratureSettings | None = None) -> PeriodResult:
    """Period matrix Omega = B A^-1 of the curve, A and B indexed as [cycle, differential]."""
    quad = QuadratureSettings.from_settings() if quad is None else quad
    g = curve.genus
    normalized = curve.normalized()
    points = np.asarray(normalized.branch_points)

    moments, estimate, count = _all_moments(points, g, quad)
    cut_moments = moments[0 : 2 * g : 2]  # cuts 1..g
    gap_moments = moments[1 : 2 * g : 2]  # gaps 1..g
    signs = np.array([(-1.0) ** (g + 1 - j) for j in range(1, g + 1)])[:, None]

    a_periods = 2j * signs * cut_moments
    gap_cycles = 2.0 * signs * gap_moments

    rejected = {}
    for label, b_periods in _candidate_bases(gap_cycles):
        omega = np.linalg.solve(a_periods.T, b_periods.T).T
        residual = float(np.max(np.abs(omega - omega.T)))
        try:
            point = validate_siegel(omega, sym_tol=PERIOD_SYM_TOL)
        except (NotSymmetric, NotPositive) as exc:
            rejected[label] = exc.diagnostics
            continue
        if label != "upper":
            logger.info(f"hyperelliptic periods: using the {label} cycle basis")
        return PeriodResult(
            omega=point,
            a_periods=a_periods,
            b_periods=b_periods,
            symmetry_residual=residual,
            quadrature_error_estimate=estimate,
            basis=label,
            nodes=count,
        )

    raise SymplecticBasisNotFound(
        "no candidate cycle basis gives a symmetric period matrix with positive imaginary part",
        rejected=rejected,
    )


def agm(a: float, b: float, tol: float = 1e-15) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    while abs(a - b) > tol * a:
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return 0.5 * (a + b)


def _cross_ratios(e) -> tuple[float, float]:
    e1, e2, e3, e4 = (float(x) for x in e)
    denominator = (e4 - e2) * (e3 - e1)
    return (e3 - e2) * (e4 - e1) / denominator, (e2 - e1) * (e4 - e3) / denominator


def elliptic_period_agm(e) -> complex:
    """tau = i AGM(1, k) / AGM(1, k') for the curve with four real branch points."""
    e = tuple(e)
    if len(e) != 4:
        raise ValueError("need exactly four branch points")
    HyperellipticCurve.from_points(e)
    k_squared, k_prime_squared = _cross_ratios(e)
    return 1j * agm(1.0, np.sqrt(k_squared)) / agm(1.0, np.sqrt(k_prime_squared))
