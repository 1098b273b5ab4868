"""Evaluate h_xi(phi) over every odd characteristic of a genus-4 point."""

from __future__ import annotations

import asyncio
import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from schottky.config import settings
from schottky.core.characteristics import ThetaCharacteristic, characteristic_index, enumerate_characteristics
from schottky.core.siegel import SiegelPoint
from schottky.forms.modular import ModularValue, evaluate_h, invariant_degree, modular_weight
from schottky.theta.engine import ThetaSettings
from schottky.utils.errors import SchottkyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepSummary:
    count: int
    max_scale_free: float
    min_scale_free: float
    median_scale_free: float
    vanishing_count: int
    flag_counts: dict[str, int]
    fermat_locus: str
    nonvanishing: bool
    log10_abs_product: float | None = None

    def to_dict(self) -> dict:
        payload = {
            "count": self.count,
            "max_scale_free": self.max_scale_free,
            "min_scale_free": self.min_scale_free,
            "median_scale_free": self.median_scale_free,
            "vanishing_count": self.vanishing_count,
            "flag_counts": dict(sorted(self.flag_counts.items())),
            "fermat_locus": self.fermat_locus,
            "nonvanishing": self.nonvanishing,
        }
        if self.log10_abs_product is not None:
            product = self.log10_abs_product
            payload["log10_abs_product"] = product if math.isfinite(product) else str(product)
        return payload


@dataclass(frozen=True)
class SweepReport:
    omega_hash: str
    invariant: str
    entries: list[ModularValue]
    summary: SweepSummary

    def to_dict(self) -> dict:
        return {
            "omega_hash": self.omega_hash,
            "invariant": self.invariant,
            "entries": [entry.to_dict() for entry in self.entries],
            "summary": self.summary.to_dict(),
        }


def summarize(entries: list[ModularValue], name: str, vanish_tol: float | None = None) -> SweepSummary:
    """Extremes, flag counts and pointwise Fermat-locus membership of a sweep."""
    vanish_tol = settings.vanish_tol if vanish_tol is None else vanish_tol
    values = np.array([entry.scale_free for entry in entries])
    vanishing = int(np.sum(values < vanish_tol))
    flags = Counter(flag for entry in entries for flag in entry.flags)

    if vanishing == len(entries):
        locus = "small"
    elif vanishing:
        locus = "big"
    else:
        locus = "none"

    log_product = None
    if name == "delta":
        raws = [abs(entry.raw) for entry in entries]
        log_product = -math.inf if min(raws) == 0.0 else float(sum(math.log10(r) for r in raws))

    return SweepSummary(
        count=len(entries),
        max_scale_free=float(values.max()),
        min_scale_free=float(values.min()),
        median_scale_free=float(np.median(values)),
        vanishing_count=vanishing,
        flag_counts=dict(flags),
        fermat_locus=locus,
        nonvanishing=bool(values.max() >= settings.nonvanishing_floor),
        log10_abs_product=log_product,
    )


def _evaluate_entry(xi: ThetaCharacteristic, omega: SiegelPoint, name: str, s: ThetaSettings | None) -> ModularValue:
    try:
        return evaluate_h(xi, omega, name, s)
    except SchottkyError as exc:
        logger.warning(f"sweep entry {xi} failed: {exc.message}")
        return ModularValue(
            xi=xi,
            xi_index=characteristic_index(xi, "odd"),
            invariant=name,
            raw=0j,
            scale_free=0.0,
            weight=modular_weight(omega.g, invariant_degree(omega, name)),
            flags=(f"error:{type(exc).__name__}",),
        )


def _report(omega: SiegelPoint, name: str, entries: list[ModularValue]) -> SweepReport:
    summary = summarize(entries, name)
    logger.info(
        f"sweep {name} on {omega.digest()}: max scale-free {summary.max_scale_free:.3e}, "
        f"{summary.vanishing_count}/{summary.count} vanishing"
    )
    return SweepReport(omega_hash=omega.digest(), invariant=name, entries=entries, summary=summary)


async def asweep_odd(
    omega: SiegelPoint,
    name: str = "S",
    s: ThetaSettings | None = None,
    parallelism: int | None = None,
) -> SweepReport:
    """Concurrent sweep in worker threads; entries keep the characteristic order."""
    invariant_degree(omega, name)
    parallelism = settings.parallelism if parallelism is None else parallelism
    if parallelism < 1:
        raise ValueError("parallelism must be at least 1")
    characteristics = enumerate_characteristics(omega.g, "odd")
    logger.info(f"sweep {name} over {len(characteristics)} odd characteristics, parallelism {parallelism}")

    gate = asyncio.Semaphore(parallelism)

    async def run(xi: ThetaCharacteristic) -> ModularValue:
        async with gate:
            return await asyncio.to_thread(_evaluate_entry, xi, omega, name, s)

    entries = await asyncio.gather(*(run(xi) for xi in characteristics))
    return _report(omega, name, list(entries))


def sweep_odd(
    omega: SiegelPoint,
    name: str = "S",
    s: ThetaSettings | None = None,
    parallelism: int | None = None,
) -> SweepReport:
    """All odd characteristics in enumeration order."""
    invariant_degree(omega, name)
    parallelism = settings.parallelism if parallelism is None else parallelism
    if parallelism < 1:
        raise ValueError("parallelism must be at least 1")
    if parallelism > 1:
        return asyncio.run(asweep_odd(omega, name, s, parallelism))

    characteristics = enumerate_characteristics(omega.g, "odd")
    logger.info(f"sweep {name} over {len(characteristics)} odd characteristics")
    entries = [_evaluate_entry(xi, omega, name, s) for xi in characteristics]
    return _report(omega, name, entries)
