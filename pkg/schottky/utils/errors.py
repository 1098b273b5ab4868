"""Domain errors raised across the Schottky toolkit.

Every error carries the name of the module that raised it and optional
numeric diagnostics, so the CLI can turn it into machine-readable JSON.
"""

from __future__ import annotations

from typing import Any


class SchottkyError(Exception):
    """Base class for all domain errors."""

    module = "schottky"

    def __init__(self, message: str, **diagnostics: Any) -> None:
        super().__init__(message)
        self.message = message
        self.diagnostics = diagnostics

    def to_payload(self) -> dict[str, Any]:
        """Return the error as a JSON-ready dictionary."""
        payload: dict[str, Any] = {
            "error": type(self).__name__,
            "module": self.module,
            "message": self.message,
        }
        if self.diagnostics:
            payload["diagnostics"] = {key: _plain(value) for key, value in self.diagnostics.items()}
        return payload


def _plain(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if hasattr(value, "item"):
        return _plain(value.item())
    return value


# ---------------------------------------------------------------------------
# siegel_core
# ---------------------------------------------------------------------------


class NotSymmetric(SchottkyError):
    """Period matrix asymmetry exceeds the symmetry tolerance."""

    module = "siegel_core"


class NotPositive(SchottkyError):
    """Imaginary part of the period matrix is not positive definite."""

    module = "siegel_core"


class IllConditioned(SchottkyError):
    """(C Omega + D) is too badly conditioned for double precision."""

    module = "siegel_core"


# ---------------------------------------------------------------------------
# theta_engine
# ---------------------------------------------------------------------------


class RadiusCapExceeded(SchottkyError):
    """The certified truncation radius exceeds the configured cap."""

    module = "theta_engine"


class DegenerateSample(SchottkyError):
    """All sampled theta values are too small to form ratios."""

    module = "theta_engine"


# ---------------------------------------------------------------------------
# taylor_jet
# ---------------------------------------------------------------------------


class EvenCharacteristic(SchottkyError):
    """An odd characteristic was required."""

    module = "taylor_jet"


class SingularOddTheta(SchottkyError):
    """The linear term vanishes: the theta divisor is singular at the origin."""

    module = "taylor_jet"


class SingularBasis(SchottkyError):
    """The completed covector basis is numerically singular."""

    module = "taylor_jet"


# ---------------------------------------------------------------------------
# cubic_invariants
# ---------------------------------------------------------------------------


class WrongArity(SchottkyError):
    """Ternary invariant requested for a form that is not ternary."""

    module = "cubic_invariants"


class SingularCubic(SchottkyError):
    """Discriminant below threshold; the j-invariant is undefined."""

    module = "cubic_invariants"


class SingularMatrix(SchottkyError):
    """A linear change of variables is not invertible."""

    module = "cubic_invariants"


# ---------------------------------------------------------------------------
# schottky_form
# ---------------------------------------------------------------------------


class GenusUnsupported(SchottkyError):
    """Ternary invariants need genus 4."""

    module = "schottky_form"


class CharacteristicMoved(SchottkyError):
    """gamma is outside Gamma(2) and no image characteristic was given."""

    module = "schottky_form"


# ---------------------------------------------------------------------------
# abelian_builders
# ---------------------------------------------------------------------------


class QuadratureDivergence(SchottkyError):
    """Node doubling did not reach the quadrature tolerance."""

    module = "abelian_builders"


class NearDegenerateGaps(SchottkyError):
    """Branch points are not strictly increasing with a safe gap."""

    module = "abelian_builders"


class SymplecticBasisNotFound(SchottkyError):
    """No cycle configuration produced a symmetric, positive period matrix."""

    module = "abelian_builders"
