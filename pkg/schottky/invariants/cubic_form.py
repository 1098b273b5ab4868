"""Dense cubic forms in n variables.

A cubic form is stored by its monomial coefficients c_alpha, |alpha| = 3, in
the order of ``itertools.combinations_with_replacement(range(n), 3)``. The
symmetric tensor F with f(x) = sum_ijk F_ijk x_i x_j x_k is available through
``to_tensor`` and is what the invariant contractions consume.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from schottky.utils.errors import SingularMatrix


@lru_cache(maxsize=16)
def monomial_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """Sorted index triples (i <= j <= k), one per monomial x_i x_j x_k."""
    if n < 1:
        raise ValueError("a cubic form needs at least one variable")
    return tuple(itertools.combinations_with_replacement(range(n), 3))


@lru_cache(maxsize=16)
def exponents(n: int) -> tuple[tuple[int, ...], ...]:
    """Multi-indices alpha matching ``monomial_triples``."""
    result = []
    for triple in monomial_triples(n):
        counts = Counter(triple)
        result.append(tuple(counts.get(i, 0) for i in range(n)))
    return tuple(result)


@lru_cache(maxsize=16)
def _multiplicities(n: int) -> np.ndarray:
    # Number of distinct orderings of each triple: 3! / alpha!.
    values = [6 // math.prod(math.factorial(e) for e in alpha) for alpha in exponents(n)]
    return np.array(values, dtype=np.float64)


def _permutations(triple: tuple[int, int, int]) -> set[tuple[int, int, int]]:
    return set(itertools.permutations(triple))


@dataclass(frozen=True, eq=False)
class CubicForm:
    n: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        expected = len(monomial_triples(self.n))
        if self.coeffs.shape != (expected,):
            raise ValueError(f"a cubic in {self.n} variables has {expected} coefficients, got {self.coeffs.shape}")

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> CubicForm:
        array = np.array(coeffs, dtype=np.complex128, copy=True)
        array.setflags(write=False)
        return cls(n=n, coeffs=array)

    @classmethod
    def zero(cls, n: int) -> CubicForm:
        return cls.from_coeffs(n, np.zeros(len(monomial_triples(n))))

    @classmethod
    def from_monomials(cls, n: int, terms: dict[tuple[int, ...], complex]) -> CubicForm:
        """Build from {alpha: coefficient}; unlisted monomials are zero."""
        index = {alpha: position for position, alpha in enumerate(exponents(n))}
        coeffs = np.zeros(len(index), dtype=np.complex128)
        for alpha, value in terms.items():
            alpha = tuple(int(e) for e in alpha)
            if alpha not in index:
                raise ValueError(f"{alpha} is not a degree-3 exponent in {n} variables")
            coeffs[index[alpha]] += value
        return cls.from_coeffs(n, coeffs)

    @classmethod
    def from_tensor(cls, tensor) -> CubicForm:
        """Coefficients of sum_ijk F_ijk x_i x_j x_k for a symmetric tensor F."""
        tensor = np.asarray(tensor, dtype=np.complex128)
        n = tensor.shape[0]
        if tensor.shape != (n, n, n):
            raise ValueError("expected an n x n x n tensor")
        picked = np.array([tensor[triple] for triple in monomial_triples(n)])
        return cls.from_coeffs(n, picked * _multiplicities(n))

    def to_tensor(self) -> np.ndarray:
        tensor = np.zeros((self.n,) * 3, dtype=np.complex128)
        shares = self.coeffs / _multiplicities(self.n)
        for triple, share in zip(monomial_triples(self.n), shares):
            for position in _permutations(triple):
                tensor[position] = share
        return tensor

    def evaluate(self, x) -> complex:
        x = np.asarray(x, dtype=np.complex128)
        return complex(sum(c * x[i] * x[j] * x[k] for c, (i, j, k) in zip(self.coeffs, monomial_triples(self.n))))

    def substitute(self, matrix) -> CubicForm:
        """The cubic x -> f(M x) for an n x k matrix M, in k variables."""
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != self.n:
            raise ValueError(f"substitution matrix must have {self.n} rows")
        tensor = np.einsum("ijk,ia,jb,kc->abc", self.to_tensor(), matrix, matrix, matrix, optimize=True)
        return CubicForm.from_tensor(tensor)

    def scaled(self, factor: complex) -> CubicForm:
        return CubicForm.from_coeffs(self.n, factor * self.coeffs)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.linalg.norm(self.coeffs))

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs), initial=0.0))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [
                {"alpha": list(alpha), "re": float(c.real), "im": float(c.imag)}
                for alpha, c in zip(exponents(self.n), self.coeffs)
            ],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> CubicForm:
        n = int(payload["n"])
        terms: dict[tuple[int, ...], complex] = {}
        for entry in payload.get("coeffs", []):
            alpha = tuple(int(e) for e in entry["alpha"])
            if len(alpha) != n or sum(alpha) != 3 or min(alpha) < 0:
                raise ValueError(f"invalid exponent {list(alpha)} for a cubic in {n} variables")
            terms[alpha] = terms.get(alpha, 0) + complex(entry.get("re", 0.0), entry.get("im", 0.0))
        return cls.from_monomials(n, terms)

    def __repr__(self) -> str:
        return f"CubicForm(n={self.n}, norm={self.norm():.3g})"


def hesse_cubic(m: complex) -> CubicForm:
    """x^3 + y^3 + z^3 + 6 m xyz."""
    return CubicForm.from_monomials(3, {(3, 0, 0): 1.0, (0, 3, 0): 1.0, (0, 0, 3): 1.0, (1, 1, 1): 6.0 * m})


def act_gl(g, f: CubicForm) -> CubicForm:
    """(g . f)(x) = f(g^-1 x)."""
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (f.n, f.n):
        raise ValueError(f"expected a {f.n} x {f.n} matrix")
    det = complex(np.linalg.det(g))
    if abs(det) <= 1e-12:
        raise SingularMatrix(f"|det g| = {abs(det):.3e} is below 1e-12", det_abs=abs(det))
    return f.substitute(np.linalg.inv(g))
