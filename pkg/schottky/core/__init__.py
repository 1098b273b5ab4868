from schottky.core.characteristics import (
    ThetaCharacteristic,
    characteristic_at,
    characteristic_index,
    enumerate_characteristics,
)
from schottky.core.siegel import SiegelPoint, block_diag, validate_siegel
from schottky.core.symplectic import (
    SymplecticInt,
    automorphy,
    in_gamma_2,
    in_gamma_4_8,
    inversion,
    is_symplectic,
    lower_translation,
    random_gamma_4_8,
    sp_action_omega,
    sp_action_z,
    translation,
    unimodular,
)

__all__ = [
    "SiegelPoint",
    "SymplecticInt",
    "ThetaCharacteristic",
    "automorphy",
    "block_diag",
    "characteristic_at",
    "characteristic_index",
    "enumerate_characteristics",
    "in_gamma_2",
    "in_gamma_4_8",
    "inversion",
    "is_symplectic",
    "lower_translation",
    "random_gamma_4_8",
    "sp_action_omega",
    "sp_action_z",
    "translation",
    "unimodular",
    "validate_siegel",
]
