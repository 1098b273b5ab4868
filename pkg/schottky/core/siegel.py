"""Points of the Siegel upper half space."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from schottky.config import settings
from schottky.utils.errors import NotPositive, NotSymmetric

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A validated period matrix: symmetric with positive-definite imaginary part."""

    g: int
    omega: np.ndarray
    lambda_min: float
    condition: float | None = None

    @property
    def real(self) -> np.ndarray:
        return self.omega.real

    @property
    def imag(self) -> np.ndarray:
        return self.omega.imag

    def digest(self) -> str:
        """Stable hash of the matrix entries, used to label reports."""
        data = np.ascontiguousarray(self.omega, dtype=np.complex128).tobytes()
        return hashlib.sha256(data).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"SiegelPoint(g={self.g}, lambda_min={self.lambda_min:.3g})"


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def validate_siegel(
    raw: np.ndarray,
    sym_tol: float | None = None,
    pos_tol: float | None = None,
    condition: float | None = None,
) -> SiegelPoint:
    """Check symmetry and positivity of a square complex matrix.

    Matrices within ``sym_tol`` of symmetric are replaced by the average with
    their transpose.
    """
    sym_tol = settings.sym_tol if sym_tol is None else sym_tol
    pos_tol = settings.pos_tol if pos_tol is None else pos_tol

    omega = np.asarray(raw, dtype=np.complex128)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1] or omega.shape[0] < 1:
        raise ValueError(f"period matrix must be square with g >= 1, got shape {omega.shape}")

    asymmetry = float(np.max(np.abs(omega - omega.T)))
    if asymmetry > sym_tol:
        raise NotSymmetric(
            f"period matrix asymmetry {asymmetry:.3e} exceeds tolerance {sym_tol:.1e}",
            asymmetry=asymmetry,
            sym_tol=sym_tol,
        )
    omega = 0.5 * (omega + omega.T)

    lambda_min = float(scipy.linalg.eigvalsh(omega.imag)[0])
    if lambda_min <= pos_tol:
        raise NotPositive(
            f"smallest eigenvalue of Im(Omega) is {lambda_min:.3e}",
            lambda_min=lambda_min,
            pos_tol=pos_tol,
        )
    return SiegelPoint(g=omega.shape[0], omega=_frozen(omega), lambda_min=lambda_min, condition=condition)


def block_diag(first: SiegelPoint, second: SiegelPoint) -> SiegelPoint:
    """Block-diagonal period matrix of genus g1 + g2."""
    omega = scipy.linalg.block_diag(first.omega, second.omega)
    return SiegelPoint(
        g=first.g + second.g,
        omega=_frozen(omega),
        lambda_min=min(first.lambda_min, second.lambda_min),
    )
