"""Invariants of ternary cubics and the cone test for cubics in any number of variables.

S and T are evaluated as bracket contractions of four (resp. six) copies of
the coefficient tensor with the Levi-Civita symbol, then rescaled so that on
the Hesse pencil x^3 + y^3 + z^3 + 6m xyz

    S = m - m^4,    T = 1 - 20 m^3 - 8 m^6.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

from schottky.config import settings
from schottky.invariants.cubic_form import CubicForm, hesse_cubic
from schottky.utils.errors import SingularCubic, WrongArity

logger = logging.getLogger(__name__)

DEGREES = {"S": 4, "T": 6, "delta": 12}

_S_CONTRACTION = "ABC,DEF,GHI,JKL,ADG,BEJ,CHK,FIL->"
_T_CONTRACTION = "ABC,DEF,GHI,JKL,MNO,PQR,ADG,BEJ,CHM,FIP,KNQ,LOR->"

# Hesse parameters used to pin the normalization; generic enough that both
# targets are nonzero at several of them.
_FIT_POINTS = (0.3, -0.7 + 0.2j, 1.1j, 0.5 + 0.5j, 2.0, -1.3 - 0.4j)


@lru_cache(maxsize=1)
def _levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


@lru_cache(maxsize=2)
def _contraction_path(expression: str, copies: int, brackets: int) -> list:
    dummy = np.ones((3, 3, 3))
    # Without a size limit greedy keeps intermediates at 27 entries and falls back
    # to a single 12-operand sum for T.
    path, _ = np.einsum_path(expression, *([dummy] * (copies + brackets)), optimize=("greedy", 10**6))
    return path


def _bracket(expression: str, tensor: np.ndarray, copies: int, brackets: int) -> complex:
    eps = _levi_civita()
    operands = [tensor] * copies + [eps] * brackets
    return complex(np.einsum(expression, *operands, optimize=_contraction_path(expression, copies, brackets)))


def _raw_s(tensor: np.ndarray) -> complex:
    return _bracket(_S_CONTRACTION, tensor, 4, 4)


def _raw_t(tensor: np.ndarray) -> complex:
    return _bracket(_T_CONTRACTION, tensor, 6, 6)


def _fit(raw, target) -> complex:
    raw = np.asarray(raw)
    target = np.asarray(target)
    scale = complex(np.vdot(raw, target) / np.vdot(raw, raw))
    residual = float(np.linalg.norm(scale * raw - target) / np.linalg.norm(target))
    if residual > 1e-12:
        raise RuntimeError(f"bracket invariant is not proportional to its Hesse closed form (residual {residual:.2e})")
    return scale


@lru_cache(maxsize=1)
def normalization() -> tuple[complex, complex]:
    """Constants (lambda_S, lambda_T) matching the bracket invariants to the Hesse closed forms."""
    tensors = [hesse_cubic(m).to_tensor() for m in _FIT_POINTS]
    lam_s = _fit([_raw_s(t) for t in tensors], [m - m**4 for m in _FIT_POINTS])
    lam_t = _fit([_raw_t(t) for t in tensors], [1 - 20 * m**3 - 8 * m**6 for m in _FIT_POINTS])
    logger.debug(f"Aronhold normalization: lambda_S={lam_s:.6g}, lambda_T={lam_t:.6g}")
    return lam_s, lam_t


def _require_ternary(f: CubicForm) -> None:
    if f.n != 3:
        raise WrongArity(f"ternary invariant requested for a cubic in {f.n} variables", n=f.n)


def aronhold_S(f: CubicForm) -> complex:
    _require_ternary(f)
    return normalization()[0] * _raw_s(f.to_tensor())


def aronhold_T(f: CubicForm) -> complex:
    _require_ternary(f)
    return normalization()[1] * _raw_t(f.to_tensor())


def discriminant3(f: CubicForm) -> complex:
    """delta = T^2 + 64 S^3."""
    return aronhold_T(f) ** 2 + 64 * aronhold_S(f) ** 3


def invariant(f: CubicForm, name: str) -> complex:
    """S, T or delta by name."""
    if name == "S":
        return aronhold_S(f)
    if name == "T":
        return aronhold_T(f)
    if name == "delta":
        return discriminant3(f)
    raise ValueError(f"unknown invariant {name!r}; expected one of {sorted(DEGREES)}")


def j_invariant(f: CubicForm, tol: float | None = None) -> complex:
    """S^3 / delta, defined away from singular cubics."""
    tol = settings.singular_cubic_tol if tol is None else tol
    delta = discriminant3(f)
    threshold = tol * f.scale() ** 12
    if abs(delta) <= threshold:
        raise SingularCubic(
            f"|delta| = {abs(delta):.3e} is below {threshold:.3e}",
            delta_abs=abs(delta),
            threshold=threshold,
        )
    return aronhold_S(f) ** 3 / delta


def scale_free(value: complex, f: CubicForm, degree: int) -> float:
    """|phi(f)| / |f|^deg(phi), unchanged when f is rescaled."""
    norm = f.norm()
    if norm == 0.0:
        return 0.0
    return abs(value) / norm**degree


def cone_defect(f: CubicForm) -> float:
    """sigma_min / sigma_max of the matrix of partial derivatives as quadrics.

    Zero exactly when some derivative D_v f vanishes identically, i.e. when f
    depends on fewer than n linear forms.
    """
    if f.n < 2:
        raise ValueError("cone test needs at least two variables")
    tensor = f.to_tensor()
    pairs = [(j, k) for j in range(f.n) for k in range(j, f.n)]
    rows = np.array([[(3.0 if j == k else 6.0) * tensor[i, j, k] for j, k in pairs] for i in range(f.n)])
    singular = np.linalg.svd(rows, compute_uv=False)
    if singular[0] == 0.0:
        return 0.0
    return float(singular[f.n - 1] / singular[0])


def hesse_parameters(f: CubicForm, tol: float = 1e-12) -> np.ndarray:
    """Hesse parameters m with the same S^3 : T^2 ratio as f.

    These are the roots of (m - m^4)^3 T(f)^2 - (1 - 20 m^3 - 8 m^6)^2 S(f)^3;
    an empty array is returned for nullforms (S = T = 0).
    """
    s_value = aronhold_S(f)
    t_value = aronhold_T(f)
    if abs(s_value) <= tol * f.scale() ** 4 and abs(t_value) <= tol * f.scale() ** 6:
        return np.array([], dtype=np.complex128)
    s_hesse = Polynomial([0, 1, 0, 0, -1])
    t_hesse = Polynomial([1, 0, 0, -20, 0, 0, -8])
    pencil = s_hesse**3 * t_value**2 - t_hesse**2 * s_value**3
    roots = pencil.roots()
    return roots[np.lexsort((roots.imag, roots.real))]


def ternary_summary(f: CubicForm) -> dict:
    """S, T, delta and j (None where undefined) with scale-free magnitudes."""
    _require_ternary(f)
    s_value, t_value = aronhold_S(f), aronhold_T(f)
    delta = t_value**2 + 64 * s_value**3
    try:
        j_value: complex | None = j_invariant(f)
    except SingularCubic:
        j_value = None
    return {
        "S": s_value,
        "T": t_value,
        "delta": delta,
        "j": j_value,
        "scale_free": {
            "S": scale_free(s_value, f, 4),
            "T": scale_free(t_value, f, 6),
            "delta": scale_free(delta, f, 12),
        },
        "cone_defect": cone_defect(f),
        "hesse_parameters": hesse_parameters(f).tolist(),
    }
