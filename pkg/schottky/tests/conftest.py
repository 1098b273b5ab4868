"""
Pytest configuration and shared fixtures for the Schottky toolkit tests.
"""

import numpy as np
import pytest

from schottky.builders.periods import HyperellipticCurve
from schottky.builders.random_points import product_point, random_siegel
from schottky.core.characteristics import ThetaCharacteristic
from schottky.core.siegel import validate_siegel
from schottky.theta.engine import ThetaSettings


@pytest.fixture
def theta_settings():
    """Default truncation settings (eps = 1e-14)."""
    return ThetaSettings()


@pytest.fixture
def imaginary_identity():
    """Omega = i I_4."""
    return validate_siegel(1j * np.eye(4))


@pytest.fixture
def generic_omega():
    """A seeded generic point of H_4 with lambda_min(Im Omega) >= 1."""
    return random_siegel(4, seed=11)


@pytest.fixture
def generic_omegas():
    """A small seeded batch of generic genus-4 points."""
    return [random_siegel(4, seed=seed) for seed in (3, 5, 8)]


@pytest.fixture
def product_1_3():
    """Block-diagonal point H_1 x H_3."""
    return product_point([random_siegel(1, seed=21), random_siegel(3, seed=22)])


@pytest.fixture
def product_2_2():
    """Block-diagonal point H_2 x H_2."""
    return product_point([random_siegel(2, seed=31), random_siegel(2, seed=32)])


@pytest.fixture
def inversion_fixed_odd_xi():
    """[1110|1110]: odd (a^T b = 3) and fixed by Omega -> -Omega^-1, which swaps a and b."""
    return ThetaCharacteristic((1, 1, 1, 0), (1, 1, 1, 0))


@pytest.fixture
def hyperelliptic_curves():
    """Genus-4 curves with integer branch points."""
    return [
        HyperellipticCurve.from_points(range(10)),
        HyperellipticCurve.from_points([0, 1, 3, 4, 6, 7, 9, 11, 12, 15]),
        HyperellipticCurve.from_points([-4, -3, -1, 0, 2, 5, 6, 8, 9, 10]),
    ]


@pytest.fixture
def even_diagonal_b0():
    """Symmetric integer matrix with even diagonal."""
    return np.array(
        [
            [2, 1, 0, -1],
            [1, 0, 1, 0],
            [0, 1, -2, 1],
            [-1, 0, 1, 0],
        ]
    )
