"""JSON schemas for command-line input and output."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from schottky.builders.periods import HyperellipticCurve
from schottky.config import settings
from schottky.core.siegel import SiegelPoint, validate_siegel
from schottky.core.symplectic import SymplecticInt
from schottky.invariants.cubic_form import CubicForm


class PeriodMatrixModel(BaseModel):
    """{"g": int, "re": [[...]], "im": [[...]]}, row-major."""

    g: int = Field(ge=1)
    re: list[list[float]]
    im: list[list[float]]

    @model_validator(mode="after")
    def _square(self) -> PeriodMatrixModel:
        for part in (self.re, self.im):
            if len(part) != self.g or any(len(row) != self.g for row in part):
                raise ValueError(f"re and im must be {self.g} x {self.g}")
        return self

    def to_domain(self) -> SiegelPoint:
        return validate_siegel(np.array(self.re) + 1j * np.array(self.im))

    @classmethod
    def from_domain(cls, point: SiegelPoint) -> PeriodMatrixModel:
        return cls(g=point.g, re=point.real.tolist(), im=point.imag.tolist())


class PointModel(BaseModel):
    """{"re": [...], "im": [...]}; a missing "im" means a real point."""

    re: list[float]
    im: list[float] | None = None

    @model_validator(mode="after")
    def _same_length(self) -> PointModel:
        if self.im is not None and len(self.im) != len(self.re):
            raise ValueError("re and im must have the same length")
        return self

    def to_domain(self, g: int) -> np.ndarray:
        if len(self.re) != g:
            raise ValueError(f"z must have {g} entries, got {len(self.re)}")
        imag = np.zeros(g) if self.im is None else np.array(self.im)
        return np.array(self.re) + 1j * imag


class CubicTerm(BaseModel):
    alpha: list[int]
    re: float = 0.0
    im: float = 0.0

    @field_validator("alpha")
    @classmethod
    def _cubic_exponent(cls, value: list[int]) -> list[int]:
        if sum(value) != 3 or min(value, default=0) < 0:
            raise ValueError("alpha must be a non-negative exponent of total degree 3")
        return value


class CubicFormModel(BaseModel):
    """{"n": int, "coeffs": [{"alpha": [ints], "re": ..., "im": ...}]}."""

    n: int = Field(ge=1)
    coeffs: list[CubicTerm]

    def to_domain(self) -> CubicForm:
        return CubicForm.from_dict(self.model_dump())


class CurveModel(BaseModel):
    branch_points: list[float] = Field(min_length=4)

    def to_domain(self) -> HyperellipticCurve:
        return HyperellipticCurve.from_points(self.branch_points)


class SymplecticModel(BaseModel):
    matrix: list[list[int]]

    def to_domain(self) -> SymplecticInt:
        return SymplecticInt.from_matrix(np.array(self.matrix, dtype=np.int64))


class ErrorModel(BaseModel):
    """Payload printed on stdout when a command fails."""

    error: str
    module: str
    message: str
    diagnostics: dict | None = None


class RunConfig(BaseModel):
    """Options shared by every subcommand, with defaults from ``settings``."""

    eps: float = Field(gt=0)
    seed: int | None = None
    parallelism: int = Field(ge=1)
    output: Path | None = None

    @classmethod
    def from_options(cls, eps=None, seed=None, parallelism=None, output=None) -> RunConfig:
        return cls(
            eps=settings.theta_eps if eps is None else eps,
            seed=seed,
            parallelism=settings.parallelism if parallelism is None else parallelism,
            output=output,
        )
