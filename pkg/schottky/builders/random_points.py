"""Seeded generic points and block-diagonal product points of H_g."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from schottky.core.characteristics import ThetaCharacteristic
from schottky.core.siegel import SiegelPoint, block_diag, validate_siegel


def random_siegel(g: int, seed: int, spread: float = 0.5, floor: float = 1.0) -> SiegelPoint:
    """Omega = X + i (Y Y^T + floor I) with X symmetric and X, Y uniform in [-spread, spread].

    ``floor`` is the guaranteed lower bound of lambda_min(Im Omega).
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    if spread < 0 or floor <= 0:
        raise ValueError("spread must be non-negative and floor positive")
    if seed is None:
        raise ValueError("random_siegel needs an explicit seed")

    rng = np.random.default_rng(seed)
    upper = np.triu(rng.uniform(-spread, spread, size=(g, g)))
    real = upper + np.triu(upper, k=1).T
    y = rng.uniform(-spread, spread, size=(g, g))
    imag = y @ y.T + floor * np.eye(g)
    return validate_siegel(real + 1j * imag)


@dataclass(frozen=True, eq=False)
class ProductPoint:
    """A block-diagonal period matrix together with its factor genera."""

    omega: SiegelPoint
    parts: tuple[SiegelPoint, ...]

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(part.g for part in self.parts)

    def split_characteristic(self, xi: ThetaCharacteristic) -> list[ThetaCharacteristic]:
        """The factor characteristics whose theta functions multiply to theta[xi]."""
        if xi.g != self.omega.g:
            raise ValueError(f"genus mismatch: characteristic has g={xi.g}, product has g={self.omega.g}")
        result = []
        start = 0
        for g in self.genera:
            result.append(ThetaCharacteristic(xi.a[start : start + g], xi.b[start : start + g]))
            start += g
        return result

    def split_parities(self, xi: ThetaCharacteristic) -> tuple[int, ...]:
        return tuple(part.parity for part in self.split_characteristic(xi))

    def to_dict(self) -> dict:
        return {"genera": list(self.genera), "g": self.omega.g}


def product_point(parts) -> ProductPoint:
    parts = tuple(parts)
    if len(parts) < 2:
        raise ValueError("a product point needs at least two factors")
    return ProductPoint(omega=reduce(block_diag, parts), parts=parts)
