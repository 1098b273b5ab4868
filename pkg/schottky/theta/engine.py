"""Riemann theta functions with half-integer characteristics.

The series

    theta[xi](z, Omega) = sum_n exp(pi i (v^T Omega v + 2 v^T (z + b/2))),  v = n + a/2,

is summed over the shifted lattice points in an ellipsoid of Im Omega. With
Im Omega = T^T T (Cholesky) and c = (Im Omega)^-1 Im z, a term has modulus
exp(pi c^T Im Omega c) * exp(-pi |T (v + c)|^2), so the sum runs over
|T (v + c)| <= R with R certified by a shell-counting majorant of the Gaussian
tail. Derivatives in z come from the term-wise differentiated series.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from schottky.config import settings
from schottky.core.characteristics import ThetaCharacteristic
from schottky.core.siegel import SiegelPoint
from schottky.utils.errors import RadiusCapExceeded

logger = logging.getLogger(__name__)

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class ThetaSettings:
    """Truncation target and caps for the lattice sums."""

    eps: float = 1e-14
    max_radius: int = 60
    eval_ball: float = 2.0
    max_points: int = 2_000_000

    def __post_init__(self) -> None:
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.max_radius < 1:
            raise ValueError("max_radius must be at least 1")
        if self.max_points < 1:
            raise ValueError("max_points must be at least 1")

    @classmethod
    def from_settings(cls, **overrides) -> ThetaSettings:
        values = {
            "eps": settings.theta_eps,
            "max_radius": settings.theta_max_radius,
            "eval_ball": settings.eval_ball,
            "max_points": settings.theta_max_points,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass(frozen=True, eq=False)
class ThetaJetRaw:
    """Value and z-derivatives up to order three of one theta function."""

    value: complex
    gradient: np.ndarray
    hessian: np.ndarray
    third: np.ndarray
    radius: int
    lattice_size: int


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------


def _tail_majorant(g: int, lam: float, radius: int, deriv_order: int, shift: float = 0.0) -> float:
    """Bound on the sum over |w| > radius of (2 pi |v|)^k exp(-pi |w|^2), w = T (v + c).

    The points w form a translate of the lattice T Z^g, whose minimal distance
    is at least rho = sqrt(lam). Shell R collects the points with
    R < |w| <= R + 1; disjoint balls of radius rho / 2 bound their number by
    (1 + 2 (R + 1) / rho)^g, and |v| <= (R + 1) / rho + |c| bounds each factor.
    """
    rho = math.sqrt(lam)
    total = 0.0
    shell = radius
    while True:
        log_count = g * math.log(1.0 + 2.0 * (shell + 1) / rho)
        log_term = deriv_order * math.log(2 * math.pi * ((shell + 1) / rho + shift)) - math.pi * shell * shell
        contribution = math.exp(log_count + log_term)
        total += contribution
        # Past the peak the shells decay faster than geometrically.
        if shell > radius + 2 and contribution < 1e-6 * max(total, 1e-300):
            return total
        shell += 1


def truncation_radius(
    omega: SiegelPoint,
    a,
    eps: float,
    deriv_order: int = 0,
    max_radius: int | None = None,
    shift: float = 0.0,
) -> int:
    """Smallest radius, in the Im Omega norm, whose tail majorant is below eps / 2.

    ``shift`` is |c| for an evaluation point with c = (Im Omega)^-1 Im z; it only
    enters the derivative factors. The other half of eps is the rounding budget
    of the summation.
    """
    if deriv_order not in (0, 1, 2, 3):
        raise ValueError("deriv_order must be between 0 and 3")
    if len(a) != omega.g:
        raise ValueError(f"characteristic length {len(a)} does not match g={omega.g}")
    max_radius = settings.theta_max_radius if max_radius is None else max_radius
    lam = omega.lambda_min

    radius = 0
    while _tail_majorant(omega.g, lam, radius, deriv_order, shift) >= eps / 2:
        radius += 1
        if radius > max_radius:
            raise RadiusCapExceeded(
                f"lambda_min(Im Omega) = {lam:.3e} needs a radius above the cap {max_radius} for eps = {eps:.1e}",
                lambda_min=lam,
                max_radius=max_radius,
                eps=eps,
            )
    return radius


def _cholesky_upper(omega: SiegelPoint) -> np.ndarray:
    return scipy.linalg.cholesky(omega.imag, lower=False)


def _enumerate_ellipsoid(
    a: tuple[int, ...],
    upper: np.ndarray,
    center: np.ndarray,
    radius: int,
    max_points: int,
) -> np.ndarray:
    """Points v = n + a/2 with |upper (v + center)| <= radius, in lexicographic order of n.

    Coordinates are fixed from the last to the first: with the later ones
    chosen, row i of the triangular factor leaves an interval for x_i.
    """
    g = len(a)
    offset = np.asarray(a, dtype=np.float64) / 2.0 + center
    chosen = np.zeros((1, 0), dtype=np.float64)
    remaining = np.array([float(radius) ** 2])
    slack = 1e-12 * max(float(radius) ** 2, 1.0)

    for i in reversed(range(g)):
        diagonal = upper[i, i]
        partial = chosen @ upper[i, i + 1 :]
        reach = np.sqrt(np.maximum(remaining, 0.0)) / diagonal
        middle = -partial / diagonal - offset[i]
        low = np.ceil(middle - reach - 1e-12).astype(np.int64)
        high = np.floor(middle + reach + 1e-12).astype(np.int64)
        counts = np.maximum(high - low + 1, 0)
        total = int(counts.sum())
        if total > max_points:
            raise RadiusCapExceeded(
                f"the ellipsoid of radius {radius} holds more than {max_points} lattice points",
                radius=radius,
                max_points=max_points,
                stage_points=total,
            )

        rows = np.repeat(np.arange(chosen.shape[0]), counts)
        steps = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        coordinate = (np.repeat(low, counts) + steps).astype(np.float64) + offset[i]

        partial = partial[rows] + diagonal * coordinate
        chosen = np.column_stack([coordinate, chosen[rows]])
        remaining = remaining[rows] - partial**2
        keep = remaining >= -slack
        chosen, remaining = chosen[keep], remaining[keep]

    points = chosen - center
    integers = np.rint(points - np.asarray(a, dtype=np.float64) / 2.0).astype(np.int64)
    order = np.lexsort(integers[:, ::-1].T)
    points = points[order]
    points.setflags(write=False)
    return points


@lru_cache(maxsize=32)
def _centered_points(a: tuple[int, ...], upper: tuple[float, ...], radius: int, max_points: int) -> np.ndarray:
    g = len(a)
    return _enumerate_ellipsoid(a, np.array(upper).reshape(g, g), np.zeros(g), radius, max_points)


def lattice_points(
    a: tuple[int, ...],
    omega: SiegelPoint,
    radius: int,
    center=None,
    max_points: int | None = None,
) -> np.ndarray:
    """Shifted lattice points n + a/2 inside the Im Omega ellipsoid of the given radius around -center."""
    max_points = settings.theta_max_points if max_points is None else max_points
    upper = _cholesky_upper(omega)
    if center is None or not np.any(center):
        return _centered_points(tuple(int(x) for x in a), tuple(upper.ravel()), radius, max_points)
    return _enumerate_ellipsoid(tuple(a), upper, np.asarray(center, dtype=np.float64), radius, max_points)


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


def _check_genus(xi: ThetaCharacteristic, omega: SiegelPoint) -> None:
    if xi.g != omega.g:
        raise ValueError(f"genus mismatch: characteristic has g={xi.g}, Omega has g={omega.g}")


def _center(z: np.ndarray, omega: SiegelPoint) -> np.ndarray:
    return np.linalg.solve(omega.imag, z.imag)


def _terms(
    xi: ThetaCharacteristic,
    z: np.ndarray,
    omega: SiegelPoint,
    radius: int,
    center: np.ndarray,
    max_points: int,
) -> tuple[np.ndarray, np.ndarray]:
    points = lattice_points(xi.a, omega, radius, center, max_points)
    quadratic = np.einsum("ni,ij,nj->n", points, omega.omega, points)
    linear = points @ (z + xi.b_vec / 2.0)
    return np.exp(1j * np.pi * quadratic + TWO_PI_I * linear), points


def reduce_argument(xi: ThetaCharacteristic, z, omega: SiegelPoint) -> tuple[np.ndarray, complex]:
    """Write z = z0 + k + Omega m and return (z0, factor) with theta(z) = factor * theta(z0)."""
    z = np.asarray(z, dtype=np.complex128)
    m = np.rint(np.linalg.solve(omega.imag, z.imag))
    shifted = z - omega.omega @ m
    k = np.rint(shifted.real)
    z0 = shifted - k

    exponent = -m @ omega.omega @ m - 2.0 * m @ (z0 + k + xi.b_vec / 2.0) + xi.a_vec @ k
    return z0, complex(np.exp(1j * np.pi * exponent))


def theta(xi: ThetaCharacteristic, z, omega: SiegelPoint, s: ThetaSettings | None = None) -> complex:
    """Evaluate theta[xi](z, Omega).

    The absolute truncation error is at most eps * exp(pi Im z0^T (Im Omega)^-1 Im z0),
    which is below eps * exp(pi |Im z0|^2 / lambda_min); z0 is z after
    quasi-periodic reduction (eps itself for real z0).
    """
    s = ThetaSettings.from_settings() if s is None else s
    _check_genus(xi, omega)
    z = np.asarray(z, dtype=np.complex128)
    if z.shape != (omega.g,):
        raise ValueError(f"z must be a vector of length {omega.g}")

    factor = 1.0 + 0.0j
    if np.max(np.abs(z), initial=0.0) > s.eval_ball:
        z, factor = reduce_argument(xi, z, omega)

    radius = truncation_radius(omega, xi.a, s.eps, 0, s.max_radius)
    terms, _ = _terms(xi, z, omega, radius, _center(z, omega), s.max_points)
    return complex(factor * np.sum(terms))


def _symmetric_matrix(raw: np.ndarray) -> np.ndarray:
    upper = np.triu(raw)
    return upper + np.triu(raw, k=1).T


def _symmetric_tensor(raw: np.ndarray) -> np.ndarray:
    g = raw.shape[0]
    result = np.empty_like(raw)
    for i in range(g):
        for j in range(i, g):
            for k in range(j, g):
                entry = raw[i, j, k]
                for p, q, r in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
                    result[p, q, r] = entry
    return result


def theta_jet(
    xi: ThetaCharacteristic,
    omega: SiegelPoint,
    s: ThetaSettings | None = None,
    z=None,
) -> ThetaJetRaw:
    """Value, gradient, Hessian and third-derivative tensor of theta[xi] at z (default 0)."""
    s = ThetaSettings.from_settings() if s is None else s
    _check_genus(xi, omega)
    z = np.zeros(omega.g, dtype=np.complex128) if z is None else np.asarray(z, dtype=np.complex128)

    center = _center(z, omega)
    radius = truncation_radius(omega, xi.a, s.eps, 3, s.max_radius, shift=float(np.linalg.norm(center)))
    weights, points = _terms(xi, z, omega, radius, center, s.max_points)
    factors = TWO_PI_I * points

    value = complex(np.sum(weights))
    gradient = np.sum(weights[:, None] * factors, axis=0)
    weighted = weights[:, None] * factors
    hessian = weighted.T @ factors
    # One slice per index keeps the intermediates at n x g.
    third = np.empty((omega.g,) * 3, dtype=np.complex128)
    for k in range(omega.g):
        third[:, :, k] = (weighted * factors[:, k : k + 1]).T @ factors
    logger.debug(f"theta jet {xi}: radius {radius}, {points.shape[0]} lattice points")

    return ThetaJetRaw(
        value=value,
        gradient=gradient,
        hessian=_symmetric_matrix(hessian),
        third=_symmetric_tensor(third),
        radius=radius,
        lattice_size=int(points.shape[0]),
    )
