"""Half-integer theta characteristics stored as bit vectors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Literal

import numpy as np

Parity = Literal["odd", "even", "all"]


@dataclass(frozen=True)
class ThetaCharacteristic:
    """A pair of bit vectors (a, b); the halves a/2, b/2 enter only the theta series."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b) or not self.a:
            raise ValueError("characteristic vectors must be non-empty and of equal length")
        if any(bit not in (0, 1) for bit in self.a + self.b):
            raise ValueError("characteristic entries must be 0 or 1")

    @classmethod
    def from_bits(cls, a, b) -> ThetaCharacteristic:
        return cls(tuple(int(x) for x in a), tuple(int(x) for x in b))

    @property
    def g(self) -> int:
        return len(self.a)

    @property
    def parity(self) -> int:
        """a^T b mod 2: 1 for odd characteristics, 0 for even ones."""
        return sum(x * y for x, y in zip(self.a, self.b)) % 2

    @property
    def is_odd(self) -> bool:
        return self.parity == 1

    @cached_property
    def a_vec(self) -> np.ndarray:
        return np.array(self.a, dtype=np.float64)

    @cached_property
    def b_vec(self) -> np.ndarray:
        return np.array(self.b, dtype=np.float64)

    def to_dict(self) -> dict[str, list[int]]:
        return {"a": list(self.a), "b": list(self.b)}

    def __str__(self) -> str:
        return "[" + "".join(map(str, self.a)) + "|" + "".join(map(str, self.b)) + "]"


def enumerate_characteristics(g: int, parity: Parity = "all") -> list[ThetaCharacteristic]:
    """All characteristics of genus g in lexicographic order of (a, b), filtered by parity."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    if parity not in ("odd", "even", "all"):
        raise ValueError(f"unknown parity {parity!r}")
    return list(_enumerate(g, parity))


@lru_cache(maxsize=32)
def _enumerate(g: int, parity: Parity) -> tuple[ThetaCharacteristic, ...]:
    result = []
    for bits in itertools.product((0, 1), repeat=2 * g):
        xi = ThetaCharacteristic(bits[:g], bits[g:])
        if parity == "all" or (parity == "odd") == xi.is_odd:
            result.append(xi)
    return tuple(result)


def characteristic_at(g: int, index: int, parity: Parity = "odd") -> ThetaCharacteristic:
    """The characteristic at a position of the deterministic enumeration."""
    table = enumerate_characteristics(g, parity)
    if not 0 <= index < len(table):
        raise IndexError(f"characteristic index {index} out of range 0..{len(table) - 1}")
    return table[index]


def characteristic_index(xi: ThetaCharacteristic, parity: Parity = "odd") -> int:
    return enumerate_characteristics(xi.g, parity).index(xi)
