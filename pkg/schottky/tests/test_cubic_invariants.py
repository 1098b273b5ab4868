"""
Unit tests for cubic forms, the Aronhold invariants and the cone test.
"""

import numpy as np
import pytest

from schottky.invariants.aronhold import (
    _S_CONTRACTION,
    _T_CONTRACTION,
    _contraction_path,
    aronhold_S,
    aronhold_T,
    cone_defect,
    discriminant3,
    hesse_parameters,
    invariant,
    j_invariant,
    normalization,
    scale_free,
    ternary_summary,
)
from schottky.invariants.cubic_form import CubicForm, act_gl, exponents, hesse_cubic, monomial_triples
from schottky.utils.errors import SingularCubic, SingularMatrix, WrongArity


def _random_cubic(rng, n=3):
    size = len(monomial_triples(n))
    return CubicForm.from_coeffs(n, rng.standard_normal(size) + 1j * rng.standard_normal(size))


def _random_matrix(rng, n=3):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


FERMAT = CubicForm.from_monomials(3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})


@pytest.mark.unit
class TestCubicForm:
    def test_monomial_count(self):
        assert len(monomial_triples(3)) == 10
        assert len(monomial_triples(4)) == 20
        assert exponents(3)[0] == (3, 0, 0)

    def test_tensor_matches_evaluation(self):
        rng = np.random.default_rng(1)
        f = _random_cubic(rng, 4)
        tensor = f.to_tensor()
        for _ in range(5):
            x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            assert abs(np.einsum("ijk,i,j,k->", tensor, x, x, x) - f.evaluate(x)) < 1e-12

    def test_tensor_round_trip_is_exact_for_mixed_monomials(self):
        f = CubicForm.from_monomials(3, {(1, 1, 1): 6.0, (2, 1, 0): 3.0})
        np.testing.assert_allclose(CubicForm.from_tensor(f.to_tensor()).coeffs, f.coeffs, atol=1e-15)

    def test_substitute(self):
        rng = np.random.default_rng(2)
        f = _random_cubic(rng, 4)
        matrix = rng.standard_normal((4, 2))
        restricted = f.substitute(matrix)
        assert restricted.n == 2
        x = np.array([0.3 - 0.2j, 1.1])
        assert abs(restricted.evaluate(x) - f.evaluate(matrix @ x)) < 1e-12

    def test_wrong_coefficient_count(self):
        with pytest.raises(ValueError):
            CubicForm.from_coeffs(3, np.zeros(9))

    def test_invalid_monomial(self):
        with pytest.raises(ValueError):
            CubicForm.from_monomials(3, {(2, 0, 0): 1.0})

    def test_dict_form(self):
        f = hesse_cubic(0.25)
        payload = f.to_dict()
        assert payload["n"] == 3
        assert {"alpha": [1, 1, 1], "re": 1.5, "im": 0.0} in payload["coeffs"]
        assert np.array_equal(CubicForm.from_dict(payload).coeffs, f.coeffs)

    def test_dict_rejects_bad_exponent(self):
        with pytest.raises(ValueError):
            CubicForm.from_dict({"n": 3, "coeffs": [{"alpha": [1, 1, 0], "re": 1.0}]})

    def test_coefficients_are_read_only(self):
        with pytest.raises(ValueError):
            FERMAT.coeffs[0] = 2.0


@pytest.mark.unit
class TestHesseNormalization:
    def test_normalization_is_cached(self):
        assert normalization() is normalization()

    def test_contractions_split_into_pairs(self):
        for expression, count in ((_S_CONTRACTION, 4), (_T_CONTRACTION, 6)):
            path = _contraction_path(expression, count, count)
            assert path[0] == "einsum_path"
            assert len(path) > 2

    def test_closed_forms(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            m = complex(rng.standard_normal() + 1j * rng.standard_normal())
            f = hesse_cubic(m)
            assert abs(aronhold_S(f) - (m - m**4)) <= 1e-12 * (abs(m) + abs(m) ** 4)
            assert abs(aronhold_T(f) - (1 - 20 * m**3 - 8 * m**6)) <= 1e-12 * (1 + abs(m) ** 6)

    def test_exact_values_at_one(self):
        f = hesse_cubic(1.0)
        assert abs(aronhold_S(f)) < 1e-12
        assert abs(aronhold_T(f) + 27) < 1e-11
        assert abs(discriminant3(f) - 729) < 1e-9

    def test_fermat(self):
        assert abs(aronhold_S(FERMAT)) < 1e-14
        assert abs(aronhold_T(FERMAT) - 1) < 1e-13
        assert abs(j_invariant(FERMAT)) < 1e-14

    def test_discriminant(self):
        for m in (0.0, 0.2, -0.3 + 0.4j, 1.7j):
            f = hesse_cubic(m)
            assert abs(discriminant3(f) - (1 + 8 * m**3) ** 3) <= 1e-9 * (1 + abs(m) ** 9)

    def test_singular_member_of_the_pencil(self):
        f = hesse_cubic(-0.5)
        assert abs(discriminant3(f)) < 1e-10
        with pytest.raises(SingularCubic):
            j_invariant(f)
        assert ternary_summary(f)["j"] is None

    def test_invariant_by_name(self):
        f = hesse_cubic(0.4)
        assert invariant(f, "S") == aronhold_S(f)
        assert invariant(f, "delta") == discriminant3(f)
        with pytest.raises(ValueError):
            invariant(f, "U")


@pytest.mark.unit
class TestInvariance:
    @pytest.mark.parametrize("name, weight", [("S", 4), ("T", 6), ("delta", 12)])
    def test_weight_under_gl3(self, name, weight):
        rng = np.random.default_rng(4)
        for _ in range(5):
            f = _random_cubic(rng)
            g = _random_matrix(rng)
            det = np.linalg.det(g)
            moved = invariant(act_gl(g, f), name)
            expected = det ** (-weight) * invariant(f, name)
            assert abs(moved - expected) <= 1e-8 * abs(expected)

    def test_sl3_invariance(self):
        rng = np.random.default_rng(5)
        f = _random_cubic(rng)
        g = _random_matrix(rng)
        g = g / np.linalg.det(g) ** (1 / 3)
        assert abs(aronhold_S(act_gl(g, f)) - aronhold_S(f)) <= 1e-9 * abs(aronhold_S(f))
        assert abs(j_invariant(act_gl(g, f)) - j_invariant(f)) <= 1e-8 * abs(j_invariant(f))

    def test_act_gl_is_a_left_action(self):
        rng = np.random.default_rng(6)
        f = _random_cubic(rng)
        g, h = _random_matrix(rng), _random_matrix(rng)
        np.testing.assert_allclose(act_gl(g @ h, f).coeffs, act_gl(g, act_gl(h, f)).coeffs, rtol=1e-9, atol=1e-9)

    def test_singular_matrix(self):
        with pytest.raises(SingularMatrix):
            act_gl(np.diag([1.0, 1.0, 0.0]), FERMAT)

    def test_scale_free_ignores_rescaling(self):
        rng = np.random.default_rng(7)
        f = _random_cubic(rng)
        g = f.scaled(3.0 - 2.0j)
        assert scale_free(aronhold_S(g), g, 4) == pytest.approx(scale_free(aronhold_S(f), f, 4), rel=1e-10)
        assert scale_free(1.0, CubicForm.zero(3), 4) == 0.0

    def test_wrong_arity(self):
        with pytest.raises(WrongArity):
            aronhold_S(CubicForm.zero(4))


@pytest.mark.unit
class TestConeTest:
    def test_generic_cubic_is_not_a_cone(self):
        rng = np.random.default_rng(8)
        assert cone_defect(_random_cubic(rng, 4)) > 1e-3
        assert cone_defect(FERMAT) == pytest.approx(1.0)

    def test_binary_cubic_in_three_variables(self):
        f = CubicForm.from_monomials(3, {(3, 0, 0): 1, (0, 3, 0): 1, (1, 2, 0): 0.5})
        assert cone_defect(f) < 1e-14

    def test_hidden_cone(self):
        rng = np.random.default_rng(9)
        binary = _random_cubic(rng, 2)
        projection = rng.standard_normal((2, 4))
        assert cone_defect(binary.substitute(projection)) < 1e-12

    @pytest.mark.parametrize(
        "monomials",
        [
            {(3, 0, 0): 1, (0, 3, 0): 1},
            {(3, 0, 0): 1, (2, 1, 0): 1},
            {
                (3, 0, 0): 1,
                (0, 3, 0): 1,
                (0, 0, 3): 1,
                (2, 1, 0): 3,
                (2, 0, 1): 3,
                (1, 2, 0): 3,
                (0, 2, 1): 3,
                (1, 0, 2): 3,
                (0, 1, 2): 3,
                (1, 1, 1): 6,
            },
        ],
        ids=["x3+y3", "x3+x2y", "(x+y+z)3"],
    )
    def test_cones_are_nullforms(self, monomials):
        f = CubicForm.from_monomials(3, monomials)
        assert cone_defect(f) < 1e-12
        assert abs(aronhold_S(f)) < 1e-8
        assert abs(aronhold_T(f)) < 1e-8

    def test_needs_two_variables(self):
        with pytest.raises(ValueError):
            cone_defect(CubicForm.from_monomials(1, {(3,): 1.0}))


@pytest.mark.unit
class TestHesseParameters:
    def test_recovers_parameter(self):
        m = 0.3 + 0.1j
        rng = np.random.default_rng(10)
        f = act_gl(_random_matrix(rng), hesse_cubic(m))
        roots = hesse_parameters(f)
        assert roots.shape == (12,)
        assert np.min(np.abs(roots - m)) < 1e-6

    def test_nullform(self):
        assert hesse_parameters(CubicForm.from_monomials(3, {(3, 0, 0): 1.0})).size == 0

    def test_summary(self):
        summary = ternary_summary(hesse_cubic(0.2))
        assert set(summary) == {"S", "T", "delta", "j", "scale_free", "cone_defect", "hesse_parameters"}
        assert summary["j"] is not None
        assert summary["scale_free"]["S"] >= 0
