"""Configuration settings for the Schottky toolkit."""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical tolerances and run options.

    Every field can be overridden by an environment variable with the
    ``SCHOTTKY_`` prefix (for example ``SCHOTTKY_THETA_EPS=1e-12``) or from a
    ``.env`` file in the working directory.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SCHOTTKY_",
        case_sensitive=False,
        extra="ignore",
    )

    # Period matrices
    sym_tol: float = 1e-12
    pos_tol: float = 1e-10
    cond_max: float = 1e12

    # Theta series
    theta_eps: float = 1e-14
    theta_max_radius: int = Field(default=60, ge=1)
    theta_max_points: int = Field(default=2_000_000, ge=1)
    eval_ball: float = 2.0

    # Jets and restriction
    sing_tol: float = 1e-10
    basis_det_tol: float = 1e-12
    cubic_degenerate_tol: float = 1e-9

    # Invariants
    singular_cubic_tol: float = 1e-12

    # Quadrature
    quad_nodes: int = Field(default=64, ge=2)
    quad_max_nodes: int = Field(default=4096, ge=2)
    quad_tol: float = 1e-13
    gap_tol: float = 1e-8

    # Modular forms
    vanish_tol: float = 1e-8
    # Shipped default for generic scale-free S values; recalibrate with
    # schottky.forms.calibrate_nonvanishing_floor.
    nonvanishing_floor: float = 1e-4

    # Runs
    parallelism: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    log_format: str = "json"

    @field_validator(
        "sym_tol",
        "pos_tol",
        "cond_max",
        "theta_eps",
        "eval_ball",
        "sing_tol",
        "basis_det_tol",
        "cubic_degenerate_tol",
        "singular_cubic_tol",
        "quad_tol",
        "gap_tol",
        "vanish_tol",
        "nonvanishing_floor",
    )
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tolerances must be strictly positive")
        return value

    @field_validator("log_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in {"json", "console"}:
            raise ValueError("log_format must be 'json' or 'console'")
        return value


# Create a singleton instance
settings = Settings()
