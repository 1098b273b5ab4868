"""Command-line interface: JSON in, JSON out.

Exit status is 0 on success, 1 on a domain error (the error is printed as
JSON) and 2 on a usage error.
"""

from __future__ import annotations

import functools
import json
import logging
import sys
from pathlib import Path

import click
import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

from schottky.builders.periods import QuadratureSettings, hyperelliptic_periods
from schottky.builders.random_points import product_point, random_siegel
from schottky.cli.schemas import (
    CubicFormModel,
    CurveModel,
    ErrorModel,
    PeriodMatrixModel,
    PointModel,
    RunConfig,
    SymplecticModel,
)
from schottky.config import settings
from schottky.core.characteristics import characteristic_at
from schottky.core.symplectic import random_gamma_4_8
from schottky.forms.modular import evaluate_h
from schottky.forms.sweep import sweep_odd
from schottky.forms.weight import weight_check
from schottky.invariants.aronhold import cone_defect, ternary_summary
from schottky.jets.taylor import UNITARY, odd_jet, restrict_cubic
from schottky.theta.engine import ThetaSettings, theta
from schottky.theta.transformation import check_transformation
from schottky.utils.errors import SchottkyError
from schottky.utils.logging import configure_logging

load_dotenv()
logger = logging.getLogger(__name__)

INVARIANT_CHOICE = click.Choice(["S", "T", "delta"])
PARITY_CHOICE = click.Choice(["odd", "even", "all"])


def _json_default(value):
    if isinstance(value, complex | np.complexfloating):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default)


def _emit(payload: dict, output: Path | None) -> None:
    text = render(payload)
    if output is None:
        click.echo(text)
    else:
        output.write_text(text + "\n", encoding="utf-8")


def _fail(payload: dict) -> None:
    click.echo(render(ErrorModel.model_validate(payload).model_dump(exclude_none=True)))
    sys.exit(1)


def pipeline_command(name: str, randomized: bool = False):
    """Register a subcommand that returns a JSON-ready dict.

    Adds the shared --eps, --seed, --parallelism and --output options;
    --seed is required when the command draws random numbers.
    """

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(eps, seed, parallelism, output, **kwargs):
            try:
                config = RunConfig.from_options(eps=eps, seed=seed, parallelism=parallelism, output=output)
            except ValidationError as exc:
                raise click.UsageError(str(exc)) from exc
            if randomized and config.seed is None:
                raise click.UsageError(f"{name} draws random numbers and requires --seed")

            try:
                payload = fn(config, **kwargs)
            except SchottkyError as exc:
                logger.error(f"{name} failed: {exc.message}")
                _fail(exc.to_payload())
            except ValueError as exc:
                logger.error(f"{name} rejected its input: {exc}")
                _fail({"error": type(exc).__name__, "module": "cli", "message": str(exc)})
            else:
                _emit(payload, config.output)

        wrapper = click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None)(wrapper)
        wrapper = click.option("--parallelism", type=int, default=None, help="Worker threads for sweeps.")(wrapper)
        wrapper = click.option("--seed", type=int, required=randomized, default=None, help="Random seed.")(wrapper)
        wrapper = click.option("--eps", type=float, default=None, help="Theta truncation target.")(wrapper)
        return cli.command(name)(wrapper)

    return decorate


def _omega(path: Path):
    return PeriodMatrixModel.model_validate_json(path.read_text(encoding="utf-8")).to_domain()


def _theta_settings(config: RunConfig) -> ThetaSettings:
    return ThetaSettings.from_settings(eps=config.eps)


omega_option = click.option(
    "--omega", "omega_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True
)
xi_option = click.option("--xi-index", type=int, default=0, show_default=True, help="Index among odd characteristics.")


@click.group()
@click.option("--log-level", default=None, help="Logging level (default from settings).")
@click.option("--log-format", type=click.Choice(["json", "console"]), default=None)
def cli(log_level: str | None, log_format: str | None):
    """Theta functions, restricted cubics and the genus-4 Schottky form."""
    configure_logging(level=log_level or settings.log_level, fmt=log_format or settings.log_format)


@pipeline_command("theta-eval")
@omega_option
@xi_option
@click.option("--parity", type=PARITY_CHOICE, default="all", show_default=True)
@click.option("--z", "z_json", default=None, help='JSON {"re": [...], "im": [...]}; default 0.')
def theta_eval(config: RunConfig, omega_path: Path, xi_index: int, parity: str, z_json: str | None):
    omega = _omega(omega_path)
    xi = characteristic_at(omega.g, xi_index, parity)
    if z_json is None:
        z = np.zeros(omega.g, dtype=np.complex128)
    else:
        z = PointModel.model_validate_json(z_json).to_domain(omega.g)
    value = theta(xi, z, omega, _theta_settings(config))
    return {"xi": xi.to_dict(), "xi_index": xi_index, "parity": parity, "value": value, "omega_hash": omega.digest()}


@pipeline_command("jet")
@omega_option
@xi_option
def jet(config: RunConfig, omega_path: Path, xi_index: int):
    omega = _omega(omega_path)
    result = odd_jet(characteristic_at(omega.g, xi_index), omega, _theta_settings(config))
    return result.to_dict() | {"xi_index": xi_index, "omega_hash": omega.digest()}


@pipeline_command("restrict")
@omega_option
@xi_option
@click.option("--extension", type=click.Choice(["unitary", "random"]), default="unitary", show_default=True)
def restrict(config: RunConfig, omega_path: Path, xi_index: int, extension: str):
    if extension == "random" and config.seed is None:
        raise click.UsageError("--extension random requires --seed")
    omega = _omega(omega_path)
    result = odd_jet(characteristic_at(omega.g, xi_index), omega, _theta_settings(config))
    restricted = restrict_cubic(result, UNITARY if extension == "unitary" else config.seed)
    payload = restricted.to_dict() | {"xi_index": xi_index, "omega_hash": omega.digest()}
    if restricted.m_bar.n == 3:
        payload["invariants"] = ternary_summary(restricted.m_bar)
    return payload


@pipeline_command("invariants")
@click.option("--cubic", "cubic_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
def invariants(config: RunConfig, cubic_path: Path):
    form = CubicFormModel.model_validate_json(cubic_path.read_text(encoding="utf-8")).to_domain()
    if form.n == 3:
        return ternary_summary(form)
    return {"n": form.n, "cone_defect": cone_defect(form)}


@pipeline_command("schottky")
@omega_option
@xi_option
@click.option("--invariant", "name", type=INVARIANT_CHOICE, default="S", show_default=True)
def schottky_value(config: RunConfig, omega_path: Path, xi_index: int, name: str):
    omega = _omega(omega_path)
    value = evaluate_h(characteristic_at(omega.g, xi_index), omega, name, _theta_settings(config))
    return value.to_dict() | {"omega_hash": omega.digest()}


@pipeline_command("sweep")
@omega_option
@click.option("--invariant", "name", type=INVARIANT_CHOICE, default="S", show_default=True)
def sweep(config: RunConfig, omega_path: Path, name: str):
    omega = _omega(omega_path)
    return sweep_odd(omega, name, _theta_settings(config), config.parallelism).to_dict()


def _gamma(config: RunConfig, gamma_path: Path | None, g: int, word_length: int):
    if gamma_path is not None:
        return SymplecticModel.model_validate_json(gamma_path.read_text(encoding="utf-8")).to_domain()
    if config.seed is None:
        raise click.UsageError("either --gamma or --seed (for a random Gamma(4,8) word) is required")
    return random_gamma_4_8(g, word_length, config.seed)


gamma_option = click.option(
    "--gamma", "gamma_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None
)
word_option = click.option("--word-length", type=click.IntRange(0, 16), default=2, show_default=True)


@pipeline_command("transform-check", randomized=True)
@omega_option
@xi_option
@gamma_option
@word_option
@click.option("--parity", type=PARITY_CHOICE, default="all", show_default=True)
@click.option("--samples", type=click.IntRange(1, 1000), default=8, show_default=True)
def transform_check(
    config: RunConfig,
    omega_path: Path,
    xi_index: int,
    gamma_path: Path | None,
    word_length: int,
    parity: str,
    samples: int,
):
    omega = _omega(omega_path)
    gamma = _gamma(config, gamma_path, omega.g, word_length)
    xi = characteristic_at(omega.g, xi_index, parity)
    report = check_transformation(xi, gamma, omega, samples, _theta_settings(config), seed=config.seed)
    return report.to_dict() | {"gamma": gamma.to_dict(), "omega_hash": omega.digest()}


@pipeline_command("weight-check")
@omega_option
@xi_option
@gamma_option
@word_option
@click.option("--xi-prime-index", type=int, default=None, help="Image characteristic for gamma outside Gamma(2).")
@click.option("--invariant", "name", type=INVARIANT_CHOICE, default="S", show_default=True)
def weight_check_command(
    config: RunConfig,
    omega_path: Path,
    xi_index: int,
    gamma_path: Path | None,
    word_length: int,
    xi_prime_index: int | None,
    name: str,
):
    omega = _omega(omega_path)
    gamma = _gamma(config, gamma_path, omega.g, word_length)
    xi = characteristic_at(omega.g, xi_index)
    xi_prime = None if xi_prime_index is None else characteristic_at(omega.g, xi_prime_index)
    report = weight_check(omega, gamma, xi, name, _theta_settings(config), xi_prime=xi_prime)
    return report.to_dict() | {"gamma": gamma.to_dict(), "omega_hash": omega.digest()}


@pipeline_command("periods")
@click.option("--curve", "curve_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--nodes", type=int, default=None, help="Initial Gauss-Chebyshev node count.")
def periods(config: RunConfig, curve_path: Path, nodes: int | None):
    curve = CurveModel.model_validate_json(curve_path.read_text(encoding="utf-8")).to_domain()
    result = hyperelliptic_periods(curve, QuadratureSettings.from_settings(nodes=nodes))
    return result.to_dict() | {"curve": curve.to_dict(), "omega_hash": result.omega.digest()}


@pipeline_command("random-omega", randomized=True)
@click.option("--g", "genus", type=click.IntRange(1, 8), default=4, show_default=True)
@click.option("--spread", type=click.FloatRange(min=0.0), default=0.5, show_default=True)
def random_omega(config: RunConfig, genus: int, spread: float):
    point = random_siegel(genus, config.seed, spread)
    return PeriodMatrixModel.from_domain(point).model_dump() | {"omega_hash": point.digest()}


@pipeline_command("product-omega")
@click.option(
    "--part",
    "part_paths",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    multiple=True,
    help="Factor period matrix; repeat for each factor.",
)
@click.option("--genera", default=None, help="Comma-separated factor genera for random factors (needs --seed).")
@click.option("--spread", type=click.FloatRange(min=0.0), default=0.5, show_default=True)
def product_omega(config: RunConfig, part_paths: tuple[Path, ...], genera: str | None, spread: float):
    if part_paths and genera:
        raise click.UsageError("use either --part or --genera, not both")
    if part_paths:
        parts = [_omega(path) for path in part_paths]
    elif genera:
        if config.seed is None:
            raise click.UsageError("--genera draws random factors and requires --seed")
        sizes = [int(x) for x in genera.split(",")]
        parts = [random_siegel(size, config.seed + offset, spread) for offset, size in enumerate(sizes)]
    else:
        raise click.UsageError("either --part or --genera is required")
    product = product_point(parts)
    payload = PeriodMatrixModel.from_domain(product.omega).model_dump()
    return payload | {"genera": list(product.genera), "omega_hash": product.omega.digest()}


def main() -> None:
    """Console entry point; usage errors are also reported as JSON on stdout."""
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as exc:
        error = ErrorModel(error=type(exc).__name__, module="cli", message=exc.format_message())
        click.echo(render(error.model_dump(exclude_none=True)))
        exc.show()
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)


if __name__ == "__main__":
    main()
