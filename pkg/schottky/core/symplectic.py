"""Integer symplectic matrices, their action on H_g and the Gamma(4,8) test."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from schottky.config import settings
from schottky.core.siegel import SiegelPoint, validate_siegel
from schottky.utils.errors import IllConditioned

logger = logging.getLogger(__name__)


def standard_form(g: int) -> np.ndarray:
    """J = [[0, I], [-I, 0]] as an integer matrix."""
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    return np.block([[zero, eye], [-eye, zero]])


def is_symplectic(matrix) -> bool:
    """Exact check of gamma^T J gamma = J over the integers."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        return False
    if not np.all(np.equal(np.mod(m, 1), 0)):
        return False
    exact = np.array([[int(x) for x in row] for row in m], dtype=object)
    j = np.array(standard_form(m.shape[0] // 2).tolist(), dtype=object)
    return bool(np.all(exact.T.dot(j).dot(exact) == j))


@dataclass(frozen=True, eq=False)
class SymplecticInt:
    """An element of Sp(2g, Z) with g x g blocks A, B, C, D."""

    g: int
    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, matrix) -> SymplecticInt:
        m = np.asarray(matrix)
        if not is_symplectic(m):
            raise ValueError("matrix does not satisfy the symplectic relation over the integers")
        m = np.array(m, dtype=np.int64)
        m.setflags(write=False)
        return cls(g=m.shape[0] // 2, matrix=m)

    @classmethod
    def from_blocks(cls, a, b, c, d) -> SymplecticInt:
        return cls.from_matrix(np.block([[np.asarray(a), np.asarray(b)], [np.asarray(c), np.asarray(d)]]))

    @property
    def A(self) -> np.ndarray:
        return self.matrix[: self.g, : self.g]

    @property
    def B(self) -> np.ndarray:
        return self.matrix[: self.g, self.g :]

    @property
    def C(self) -> np.ndarray:
        return self.matrix[self.g :, : self.g]

    @property
    def D(self) -> np.ndarray:
        return self.matrix[self.g :, self.g :]

    def __matmul__(self, other: SymplecticInt) -> SymplecticInt:
        return SymplecticInt.from_matrix(self.matrix @ other.matrix)

    def to_dict(self) -> dict:
        return {"g": self.g, "matrix": self.matrix.tolist()}


def automorphy(gamma: SymplecticInt, omega: SiegelPoint) -> tuple[np.ndarray, float]:
    """Return (C Omega + D) and its condition number, refusing ill-conditioned cases."""
    if gamma.g != omega.g:
        raise ValueError(f"genus mismatch: gamma has g={gamma.g}, Omega has g={omega.g}")
    factor = gamma.C @ omega.omega + gamma.D
    condition = float(np.linalg.cond(factor))
    if not np.isfinite(condition) or condition > settings.cond_max:
        logger.warning(f"C Omega + D has condition number {condition:.3e}")
        raise IllConditioned(
            f"condition number of C Omega + D is {condition:.3e}",
            condition=condition,
            threshold=settings.cond_max,
        )
    return factor, condition


def sp_action_omega(gamma: SymplecticInt, omega: SiegelPoint) -> SiegelPoint:
    """gamma . Omega = (A Omega + B)(C Omega + D)^-1."""
    factor, condition = automorphy(gamma, omega)
    numerator = gamma.A @ omega.omega + gamma.B
    image = np.linalg.solve(factor.T, numerator.T).T
    # Rounding grows with the conditioning of the automorphy factor.
    sym_tol = max(settings.sym_tol, 1e-15 * condition * max(1.0, float(np.max(np.abs(image)))))
    return validate_siegel(image, sym_tol=sym_tol, condition=condition)


def sp_action_z(gamma: SymplecticInt, z, omega: SiegelPoint) -> tuple[np.ndarray, SiegelPoint]:
    """gamma . (z, Omega) = ((C Omega + D)^-T z, gamma . Omega)."""
    factor, _ = automorphy(gamma, omega)
    z_hat = np.linalg.solve(factor.T, np.asarray(z, dtype=np.complex128))
    return z_hat, sp_action_omega(gamma, omega)


def in_gamma_2(gamma: SymplecticInt) -> bool:
    """gamma = I mod 2; such gamma fix every characteristic."""
    return bool(np.all(np.mod(gamma.matrix - np.eye(2 * gamma.g, dtype=np.int64), 2) == 0))


def in_gamma_4_8(gamma: SymplecticInt) -> bool:
    """Igusa's Gamma(4,8): gamma = I mod 4, diag(A B^T) = diag(C D^T) = 0 mod 8."""
    if np.any(np.mod(gamma.matrix - np.eye(2 * gamma.g, dtype=np.int64), 4)):
        return False
    ab = np.diag(gamma.A @ gamma.B.T)
    cd = np.diag(gamma.C @ gamma.D.T)
    return bool(np.all(np.mod(ab, 8) == 0) and np.all(np.mod(cd, 8) == 0))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def identity(g: int) -> SymplecticInt:
    return SymplecticInt.from_matrix(np.eye(2 * g, dtype=np.int64))


def inversion(g: int) -> SymplecticInt:
    """[[0, I], [-I, 0]], acting by Omega -> -Omega^-1."""
    return SymplecticInt.from_matrix(standard_form(g))


def translation(b0) -> SymplecticInt:
    """[[I, B0], [0, I]] for symmetric integer B0."""
    b0 = np.asarray(b0, dtype=np.int64)
    g = b0.shape[0]
    eye = np.eye(g, dtype=np.int64)
    return SymplecticInt.from_blocks(eye, b0, np.zeros_like(eye), eye)


def lower_translation(c0) -> SymplecticInt:
    """[[I, 0], [C0, I]] for symmetric integer C0."""
    c0 = np.asarray(c0, dtype=np.int64)
    g = c0.shape[0]
    eye = np.eye(g, dtype=np.int64)
    return SymplecticInt.from_blocks(eye, np.zeros_like(eye), c0, eye)


def unimodular(a) -> SymplecticInt:
    """[[A, 0], [0, A^-T]] for A in GL(g, Z)."""
    a = np.asarray(a, dtype=np.int64)
    inverse = np.rint(np.linalg.inv(a)).astype(np.int64)
    if not np.array_equal(a @ inverse, np.eye(a.shape[0], dtype=np.int64)):
        raise ValueError("block is not unimodular")
    return SymplecticInt.from_blocks(a, np.zeros_like(a), np.zeros_like(a), inverse.T)


def _even_diagonal_symmetric(rng: np.random.Generator, g: int) -> np.ndarray:
    """A sparse symmetric integer matrix with even diagonal: one entry pair of size 1, or one diagonal 2."""
    i, j = (int(x) for x in rng.integers(0, g, size=2))
    sign = int(rng.choice([-1, 1]))
    result = np.zeros((g, g), dtype=np.int64)
    if i == j:
        result[i, i] = 2 * sign
    else:
        result[i, j] = result[j, i] = sign
    return result


def gamma_4_8_generator(rng: np.random.Generator, g: int) -> SymplecticInt:
    """One random generator of Gamma(4,8)."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return translation(4 * _even_diagonal_symmetric(rng, g))
    if kind == 1:
        return lower_translation(4 * _even_diagonal_symmetric(rng, g))
    if g == 1:
        return translation(4 * _even_diagonal_symmetric(rng, g))
    i, j = rng.choice(g, size=2, replace=False)
    block = np.eye(g, dtype=np.int64)
    block[i, j] = 4 * int(rng.choice([-1, 1]))
    return unimodular(block)


def random_gamma_4_8(g: int, length: int, seed: int) -> SymplecticInt:
    """A random word of the given length in Gamma(4,8) generators."""
    if seed is None:
        raise ValueError("random_gamma_4_8 needs an explicit seed")
    rng = np.random.default_rng(seed)
    word = identity(g)
    for _ in range(length):
        word = gamma_4_8_generator(rng, g) @ word
    return word
