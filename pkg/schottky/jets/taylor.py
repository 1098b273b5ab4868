"""Taylor terms of odd theta functions at the origin and the restricted cubic.

For odd xi, theta[xi](z) = l(z) + m(z) + O(z^5) with l linear and m cubic.
Restricting m to the hyperplane l = 0 requires a basis of covectors whose
first element is l; the restricted cubic depends on the remaining rows only
through a GL(g-1) change of variables, compensated by a power of det(B).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from schottky.config import settings
from schottky.core.characteristics import ThetaCharacteristic
from schottky.core.siegel import SiegelPoint
from schottky.invariants.cubic_form import CubicForm
from schottky.theta.engine import ThetaSettings, theta_jet
from schottky.utils.errors import EvenCharacteristic, SingularBasis, SingularOddTheta

logger = logging.getLogger(__name__)

UNITARY = "unitary"


@dataclass(frozen=True, eq=False)
class OddJet:
    xi: ThetaCharacteristic
    ell: np.ndarray
    cubic: CubicForm
    residual_even: float
    radius: int

    @property
    def g(self) -> int:
        return self.ell.shape[0]

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.to_dict(),
            "ell": [{"re": float(x.real), "im": float(x.imag)} for x in self.ell],
            "cubic": self.cubic.to_dict(),
            "residual_even": self.residual_even,
            "radius": self.radius,
        }


@dataclass(frozen=True, eq=False)
class RestrictedCubic:
    """The cubic m read on l = 0 in the coordinates dual to a covector basis B."""

    jet: OddJet
    basis_covectors: np.ndarray
    det_B: complex
    dual_vectors: np.ndarray
    m_bar: CubicForm
    extension: str

    def p_exponent(self, degree: int) -> Fraction:
        """Power of det(B) that makes det(B)^p phi(M_B) basis independent: 3d / (g - 1)."""
        return Fraction(3 * degree, self.jet.g - 1)

    def corrected(self, value: complex, degree: int) -> complex:
        p = self.p_exponent(degree)
        if p.denominator == 1:
            return complex(self.det_B ** int(p) * value)
        # Fractional weights only arise away from genus 4; principal branch.
        return complex(np.exp(float(p) * np.log(self.det_B)) * value)

    def is_degenerate(self, tol: float | None = None) -> bool:
        """True when the restricted cubic is negligible next to the full cubic m."""
        tol = settings.cubic_degenerate_tol if tol is None else tol
        return self.m_bar.norm() <= tol * self.jet.cubic.norm()

    def to_dict(self) -> dict:
        return {
            "xi": self.jet.xi.to_dict(),
            "extension": self.extension,
            "basis_covectors": {
                "re": self.basis_covectors.real.tolist(),
                "im": self.basis_covectors.imag.tolist(),
            },
            "det_B": {"re": self.det_B.real, "im": self.det_B.imag},
            "m_bar": self.m_bar.to_dict(),
        }


def odd_jet(
    xi: ThetaCharacteristic,
    omega: SiegelPoint,
    s: ThetaSettings | None = None,
    sing_tol: float | None = None,
) -> OddJet:
    """Linear and cubic Taylor terms of theta[xi] at z = 0."""
    if not xi.is_odd:
        raise EvenCharacteristic(f"characteristic {xi} is even", xi=str(xi))
    sing_tol = settings.sing_tol if sing_tol is None else sing_tol

    raw = theta_jet(xi, omega, s)
    # m(z) = (1/3!) sum_ijk d_ijk theta z_i z_j z_k
    cubic = CubicForm.from_tensor(raw.third / 6.0)
    residual_even = max(abs(raw.value), float(np.max(np.abs(raw.hessian))))

    ell_norm = float(np.max(np.abs(raw.gradient)))
    threshold = sing_tol * cubic.scale()
    if ell_norm <= threshold:
        logger.warning(f"theta{xi} is singular at the origin: |l| = {ell_norm:.3e}")
        raise SingularOddTheta(
            f"linear term of theta{xi} vanishes: |l|_inf = {ell_norm:.3e} <= {threshold:.3e}",
            ell_norm=ell_norm,
            threshold=threshold,
            cubic_scale=cubic.scale(),
        )
    return OddJet(xi=xi, ell=raw.gradient, cubic=cubic, residual_even=residual_even, radius=raw.radius)


def _unitary_rows(ell: np.ndarray) -> np.ndarray:
    # Rows orthogonal to l in the Hermitian sense, so B has singular values 1, ..., 1, |l|.
    support = np.flatnonzero(ell)
    if support.size == 1:
        return np.delete(np.eye(ell.shape[0], dtype=np.complex128), support[0], axis=0)
    kernel = scipy.linalg.null_space(ell[None, :])
    return kernel.conj().T


def _random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _random_rows(ell: np.ndarray, seed: int) -> np.ndarray:
    """Seeded rows spanning the Hermitian complement of l, mixed by a matrix of condition number at most 2."""
    rng = np.random.default_rng(seed)
    g = ell.shape[0]
    gaussian = rng.standard_normal((g - 1, g)) + 1j * rng.standard_normal((g - 1, g))
    unit = ell / np.linalg.norm(ell)
    projected = gaussian - np.outer(gaussian @ unit.conj(), unit)
    orthonormal, _ = np.linalg.qr(projected.T)
    singular = rng.uniform(1.0, 2.0, size=g - 1)
    mix = _random_unitary(rng, g - 1) @ np.diag(singular) @ _random_unitary(rng, g - 1)
    return mix @ orthonormal.T


def restrict_cubic(jet: OddJet, extension: str | int = UNITARY, det_tol: float | None = None) -> RestrictedCubic:
    """Complete l to a covector basis and expand m(x_2 v_2 + ... + x_g v_g).

    ``extension`` is ``"unitary"`` or an integer seed for random rows.
    """
    if jet.g < 2:
        raise ValueError("the hyperplane l = 0 has no coordinates in genus 1")
    det_tol = settings.basis_det_tol if det_tol is None else det_tol

    if extension == UNITARY:
        rows, label = _unitary_rows(jet.ell), UNITARY
    elif isinstance(extension, (int, np.integer)) and not isinstance(extension, bool):
        rows, label = _random_rows(jet.ell, int(extension)), f"random:{int(extension)}"
    else:
        raise ValueError(f"unknown extension {extension!r}; expected 'unitary' or an integer seed")

    basis = np.vstack([jet.ell[None, :], rows])
    det = complex(np.linalg.det(basis))
    row_norms = float(np.prod(np.linalg.norm(basis, axis=1)))
    if abs(det) <= det_tol * row_norms:
        raise SingularBasis(
            f"covector basis is numerically singular: |det| = {abs(det):.3e}",
            det_abs=abs(det),
            row_norm_product=row_norms,
            extension=label,
        )

    dual = np.linalg.inv(basis)[:, 1:]
    m_bar = jet.cubic.substitute(dual)
    return RestrictedCubic(
        jet=jet,
        basis_covectors=basis,
        det_B=det,
        dual_vectors=dual,
        m_bar=m_bar,
        extension=label,
    )
