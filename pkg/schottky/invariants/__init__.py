from schottky.invariants.aronhold import (
    DEGREES,
    aronhold_S,
    aronhold_T,
    cone_defect,
    discriminant3,
    hesse_parameters,
    invariant,
    j_invariant,
    scale_free,
    ternary_summary,
)
from schottky.invariants.cubic_form import CubicForm, act_gl, exponents, hesse_cubic

__all__ = [
    "DEGREES",
    "CubicForm",
    "act_gl",
    "aronhold_S",
    "aronhold_T",
    "cone_defect",
    "discriminant3",
    "exponents",
    "hesse_cubic",
    "hesse_parameters",
    "invariant",
    "j_invariant",
    "scale_free",
    "ternary_summary",
]
