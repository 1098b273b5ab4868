"""
Tests for h_xi(phi): values, sweeps over odd characteristics and weight checks.
"""

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from schottky.builders.periods import hyperelliptic_periods
from schottky.builders.random_points import random_siegel
from schottky.core.characteristics import ThetaCharacteristic, enumerate_characteristics
from schottky.core.siegel import validate_siegel
from schottky.core.symplectic import identity, inversion, lower_translation, sp_action_omega, translation, unimodular
from schottky.forms.modular import (
    CUBIC_DEGENERATE,
    SINGULAR_ODD_THETA,
    calibrate_nonvanishing_floor,
    evaluate_h,
    modular_weight,
)
from schottky.forms.sweep import asweep_odd, summarize, sweep_odd
from schottky.forms.weight import weight_check
from schottky.invariants.aronhold import discriminant3, j_invariant, scale_free
from schottky.jets.taylor import odd_jet, restrict_cubic
from schottky.utils.errors import CharacteristicMoved, GenusUnsupported, SingularBasis, SingularOddTheta


@pytest.fixture(scope="module")
def generic_sweep():
    return sweep_odd(random_siegel(4, seed=11), "S")


@pytest.fixture
def odd_xi():
    return enumerate_characteristics(4, "odd")[42]


@pytest.mark.unit
class TestWeights:
    @pytest.mark.parametrize("degree, weight", [(4, 8), (6, 12), (12, 24)])
    def test_genus_four(self, degree, weight):
        assert modular_weight(4, degree) == weight

    def test_other_genera(self):
        assert modular_weight(3, 4) == 11
        assert modular_weight(5, 4) == Fraction(13, 2)

    def test_genus_one(self):
        with pytest.raises(GenusUnsupported):
            modular_weight(1, 4)


@pytest.mark.unit
class TestEvaluateH:
    def test_requires_genus_four(self):
        omega = random_siegel(3, seed=1)
        with pytest.raises(GenusUnsupported):
            evaluate_h(enumerate_characteristics(3, "odd")[0], omega)

    def test_unknown_invariant(self, generic_omega, odd_xi):
        with pytest.raises(ValueError):
            evaluate_h(odd_xi, generic_omega, "U")

    def test_generic_value(self, generic_omega, odd_xi):
        value = evaluate_h(odd_xi, generic_omega)
        assert value.weight == 8
        assert value.flags == ()
        assert value.scale_free > 0
        assert 0 < value.cone_defect <= 1
        assert value.xi_index == 42

    def test_basis_independence(self, generic_omega, odd_xi):
        unitary = evaluate_h(odd_xi, generic_omega, "S")
        for seed in (3, 4):
            other = evaluate_h(odd_xi, generic_omega, "S", extension=seed)
            assert abs(other.raw - unitary.raw) <= 1e-9 * abs(unitary.raw)
            assert other.scale_free == unitary.scale_free

    def test_basis_independence_over_many_points(self):
        table = enumerate_characteristics(4, "odd")
        for index in range(10):
            omega = random_siegel(4, seed=100 + index)
            xi = table[(13 * index) % len(table)]
            jet = odd_jet(xi, omega)
            unitary = evaluate_h(xi, omega, "S", jet=jet)
            for seed in range(10):
                other = evaluate_h(xi, omega, "S", extension=seed, jet=jet)
                assert abs(other.raw - unitary.raw) <= 1e-9 * abs(unitary.raw), (index, seed)

    def test_invariants_share_one_jet(self, generic_omega, odd_xi):
        jet = odd_jet(odd_xi, generic_omega)
        s_value = evaluate_h(odd_xi, generic_omega, "S", jet=jet).raw
        t_value = evaluate_h(odd_xi, generic_omega, "T", jet=jet).raw
        delta = evaluate_h(odd_xi, generic_omega, "delta", jet=jet).raw
        assert abs(t_value**2 + 64 * s_value**3 - delta) <= 1e-9 * abs(delta)
        # The det(B) powers cancel in S^3 / delta.
        m_bar = restrict_cubic(jet).m_bar
        assert abs(s_value**3 / delta - j_invariant(m_bar)) <= 1e-8 * abs(j_invariant(m_bar))

    def test_singular_odd_theta_is_flagged(self, generic_omega, odd_xi, mocker):
        mocker.patch(
            "schottky.forms.modular.odd_jet",
            side_effect=SingularOddTheta("linear term vanishes", ell_norm=1e-15),
        )
        value = evaluate_h(odd_xi, generic_omega)
        assert value.flags == (SINGULAR_ODD_THETA,)
        assert value.raw == 0
        assert value.ell_norm == 1e-15

    def test_product_point_with_odd_first_factor_is_degenerate(self, product_1_3):
        xi = ThetaCharacteristic((1, 0, 1, 0), (1, 0, 0, 0))
        value = evaluate_h(xi, product_1_3.omega)
        assert CUBIC_DEGENERATE in value.flags
        assert value.scale_free == 0.0

    def test_dict(self, generic_omega, odd_xi):
        payload = evaluate_h(odd_xi, generic_omega).to_dict()
        assert payload["weight"] == 8
        assert payload["invariant"] == "S"
        assert set(payload["raw"]) == {"re", "im"}


@pytest.mark.integration
class TestSweep:
    def test_generic_point_is_nonvanishing(self, generic_sweep):
        summary = generic_sweep.summary
        assert summary.count == 120
        assert summary.nonvanishing
        assert summary.max_scale_free > 1e-6
        assert summary.fermat_locus == "none"

    def test_entries_follow_enumeration(self, generic_sweep):
        assert [entry.xi_index for entry in generic_sweep.entries] == list(range(120))
        assert generic_sweep.entries[5].xi == enumerate_characteristics(4, "odd")[5]

    def test_deterministic(self, generic_sweep):
        again = sweep_odd(random_siegel(4, seed=11), "S")
        assert again.to_dict() == generic_sweep.to_dict()

    @pytest.mark.slow
    def test_generic_points_stand_far_above_products(self, product_1_3, product_2_2):
        product_max = max(sweep_odd(p.omega, "S").summary.max_scale_free for p in (product_1_3, product_2_2))
        for seed in range(200, 220):
            generic_max = sweep_odd(random_siegel(4, seed=seed), "S").summary.max_scale_free
            assert generic_max >= 100 * product_max, seed

    def test_threaded_sweep_matches(self, generic_sweep):
        threaded = sweep_odd(random_siegel(4, seed=11), "S", parallelism=3)
        np.testing.assert_allclose(
            [e.raw for e in threaded.entries], [e.raw for e in generic_sweep.entries], rtol=1e-12, atol=1e-300
        )

    async def test_async_sweep_matches(self, generic_sweep):
        report = await asweep_odd(random_siegel(4, seed=11), "S", parallelism=4)
        assert report.omega_hash == generic_sweep.omega_hash
        np.testing.assert_allclose(
            [e.raw for e in report.entries], [e.raw for e in generic_sweep.entries], rtol=1e-12, atol=1e-300
        )

    @pytest.mark.parametrize("name", ["S", "T"])
    @pytest.mark.parametrize("fixture_name", ["product_1_3", "product_2_2"])
    def test_products_lie_on_the_vanishing_locus(self, fixture_name, name, request):
        product = request.getfixturevalue(fixture_name)
        report = sweep_odd(product.omega, name)
        assert report.summary.vanishing_count == 120
        assert report.summary.fermat_locus == "small"
        assert report.summary.max_scale_free < 1e-8

    def test_failed_entries_are_flagged(self, generic_omega, mocker):
        mocker.patch(
            "schottky.forms.sweep.evaluate_h",
            side_effect=SingularBasis("covector basis is numerically singular"),
        )
        report = sweep_odd(generic_omega, "S")
        assert report.summary.flag_counts == {"error:SingularBasis": 120}
        assert report.summary.max_scale_free == 0.0

    def test_delta_product(self, generic_omega):
        report = sweep_odd(generic_omega, "delta")
        payload = report.to_dict()["summary"]
        assert "log10_abs_product" in payload
        assert np.isfinite(payload["log10_abs_product"])

    def test_summary_of_mixed_values(self, generic_sweep):
        entries = list(generic_sweep.entries[:3])
        entries[0] = replace(entries[0], scale_free=0.0)
        summary = summarize(entries, "S")
        assert summary.vanishing_count == 1
        assert summary.fermat_locus == "big"

    def test_wrong_genus(self):
        with pytest.raises(GenusUnsupported):
            sweep_odd(random_siegel(3, seed=2))

    def test_bad_parallelism(self, generic_omega):
        with pytest.raises(ValueError):
            sweep_odd(generic_omega, parallelism=0)


@pytest.mark.unit
class TestWeightCheck:
    def test_identity(self, generic_omega, odd_xi):
        report = weight_check(generic_omega, identity(4), odd_xi)
        assert report.exponent == 8
        assert report.passed()
        assert not report.advisory

    def test_translation(self, generic_omega, odd_xi, even_diagonal_b0):
        report = weight_check(generic_omega, translation(4 * even_diagonal_b0), odd_xi)
        assert abs(report.det - 1) < 1e-14
        assert report.passed(), report.to_dict()

    def test_periodicity_over_several_points(self, odd_xi, even_diagonal_b0):
        gamma = translation(4 * even_diagonal_b0)
        for seed in range(60, 65):
            omega = random_siegel(4, seed=seed)
            shifted = validate_siegel(omega.omega + 4 * even_diagonal_b0)
            np.testing.assert_allclose(sp_action_omega(gamma, omega).omega, shifted.omega, atol=1e-14)
            before = evaluate_h(odd_xi, omega).raw
            after = evaluate_h(odd_xi, shifted).raw
            assert abs(after - before) <= 1e-8 * abs(before), seed

    def test_moved_characteristic_needs_an_image(self, generic_omega, odd_xi):
        with pytest.raises(CharacteristicMoved):
            weight_check(generic_omega, inversion(4), odd_xi)

    def test_inversion_with_a_fixed_characteristic(self, generic_omega, inversion_fixed_odd_xi):
        assert inversion_fixed_odd_xi.is_odd
        report = weight_check(
            generic_omega,
            inversion(4),
            inversion_fixed_odd_xi,
            xi_prime=inversion_fixed_odd_xi,
        )
        assert report.advisory
        assert report.rel_deviation < 1e-6
        assert report.to_dict()["advisory"] is True

    @pytest.mark.parametrize("name", ["S", "T"])
    def test_lower_translation_has_nontrivial_factor(self, generic_omega, odd_xi, name):
        gamma = lower_translation(4 * np.diag([2, 0, 0, 0]))
        report = weight_check(generic_omega, gamma, odd_xi, name)
        assert abs(report.det - 1) > 1.0
        assert report.passed(), report.to_dict()
        assert report.exponent == {"S": 8, "T": 12}[name]

    @pytest.mark.slow
    def test_unimodular(self, generic_omega):
        block = np.eye(4, dtype=int)
        block[1, 3] = -4
        gamma = unimodular(block)
        for name in ("S", "T"):
            report = weight_check(generic_omega, gamma, enumerate_characteristics(4, "odd")[7], name)
            assert report.passed(), report.to_dict()
            assert report.exponent == {"S": 8, "T": 12}[name]


@pytest.mark.slow
class TestJacobianLocus:
    def test_hyperelliptic_points_are_on_the_vanishing_locus(self, hyperelliptic_curves, generic_sweep):
        for curve in hyperelliptic_curves:
            omega = hyperelliptic_periods(curve).omega
            summary = sweep_odd(omega, "S").summary
            assert summary.fermat_locus == "small", summary.to_dict()
            assert summary.max_scale_free < 1e-6
            assert summary.max_scale_free < 1e-3 * generic_sweep.summary.max_scale_free

    def test_calibrated_floor(self):
        floor = calibrate_nonvanishing_floor(batch=3, seed=5)
        assert floor > 0

    def test_j_vanishes_where_the_discriminant_does_not(self, hyperelliptic_curves):
        omega = hyperelliptic_periods(hyperelliptic_curves[0]).omega
        for xi in enumerate_characteristics(4, "odd"):
            m_bar = restrict_cubic(odd_jet(xi, omega)).m_bar
            if scale_free(discriminant3(m_bar), m_bar, 12) > 1e-3:
                assert abs(j_invariant(m_bar)) < 1e-6, xi
