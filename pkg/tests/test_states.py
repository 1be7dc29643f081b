"""Flavour states: time-zero reductions, biorthonormality, the mixed basis
and the mode functions."""

import cmath
import math

import numpy as np
import pytest

from ptosc import (
    ExceptionalPoint,
    cprime_ket,
    cprime_matrix,
    cpt_bra,
    cpt_conjugate,
    dirac_bra,
    eigensystem,
    flavour_ket,
    inner,
    make_params,
    mixed_basis_bra,
    mixed_basis_ket,
    params_from_eta,
    parity_matrix,
    pt_bra,
    tilde_bra,
    xi,
)

TIME_GRID = (-5.0, 0.0, 0.3, 7.9)
ETA_GRID = (0.1, 0.5, 0.9)


def systems():
    return [eigensystem(params_from_eta(eta)) for eta in ETA_GRID]


class TestModeFunctions:
    def test_time_zero(self, es):
        assert xi("plus", 0.0, es) == 1.0

    def test_unit_modulus(self, es):
        assert abs(xi("minus", 17.3, es)) == pytest.approx(1.0, abs=1e-15)

    def test_worked_frequency(self, es):
        t = 2.3
        assert xi("plus", t, es) == pytest.approx(cmath.exp(1j * math.sqrt(1.9) * t))

    @pytest.mark.parametrize("branch", ["plus", "minus"])
    def test_equation_of_motion_by_finite_differences(self, es, branch):
        h = 1e-4
        omega_sq = es.omega(branch) ** 2
        for t in TIME_GRID:
            second = (xi(branch, t + h, es) - 2.0 * xi(branch, t, es)
                      + xi(branch, t - h, es)) / (h * h)
            assert abs(second + omega_sq * xi(branch, t, es)) / omega_sq < 1e-6


class TestFlavourKet:
    def test_reduces_to_standard_basis_at_time_zero(self, es):
        np.testing.assert_allclose(flavour_ket(1, 0.0, es).components, [1.0, 0.0], atol=1e-14)
        np.testing.assert_allclose(flavour_ket(2, 0.0, es).components, [0.0, 1.0], atol=1e-14)

    def test_eigenvector_weights(self, es):
        # decompose ket(1, t) in the eigenbasis: weights cosh(theta) xi+ and
        # sinh(theta) xi-
        t = 1.9
        basis = np.column_stack([es.e_plus, es.e_minus])
        weights = np.linalg.solve(basis, flavour_ket(1, t, es).components)
        assert weights[0] == pytest.approx(es.cosh_theta * xi("plus", t, es), abs=1e-12)
        assert weights[1] == pytest.approx(es.sinh_theta * xi("minus", t, es), abs=1e-12)

    def test_normalised_variant_scales_by_root_sech(self, es):
        bare = flavour_ket(1, 0.4, es)
        scaled = flavour_ket(1, 0.4, es, normalised=True)
        factor = math.sqrt(es.sech_two_theta)
        np.testing.assert_allclose(scaled.components, factor * bare.components, rtol=1e-14)
        assert scaled.normalised and not bare.normalised

    def test_exceptional_point_refused(self):
        with pytest.raises(ExceptionalPoint):
            eigensystem(make_params(2.0, 1.0, 0.5))

    def test_swapped_system_uses_heavy_first_axes(self, swapped_es):
        # flavour 1 (the lighter diagonal) sits on the second heavy-first axis
        np.testing.assert_allclose(
            flavour_ket(1, 0.0, swapped_es).components, [0.0, 1.0], atol=1e-14)
        np.testing.assert_allclose(
            flavour_ket(2, 0.0, swapped_es).components, [1.0, 0.0], atol=1e-14)


class TestTildeBra:
    def test_reduces_to_standard_covectors_at_time_zero(self, es):
        np.testing.assert_allclose(tilde_bra(1, 0.0, es).components, [1.0, 0.0], atol=1e-13)
        np.testing.assert_allclose(tilde_bra(2, 0.0, es).components, [0.0, 1.0], atol=1e-13)

    def test_biorthonormal_at_worked_time(self, es):
        assert inner(tilde_bra(1, 3.7, es), flavour_ket(1, 3.7, es)) == pytest.approx(1.0, abs=1e-12)
        assert inner(tilde_bra(1, 3.7, es), flavour_ket(2, 3.7, es)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("t", TIME_GRID)
    def test_biorthonormality_across_grid(self, t):
        for es in systems():
            for i in (1, 2):
                for j in (1, 2):
                    value = inner(tilde_bra(i, t, es), flavour_ket(j, t, es))
                    assert value == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)


class TestCptBra:
    def test_time_zero_worked_point(self, es):
        np.testing.assert_allclose(cpt_bra(1, 0.0, es).components, [1.25, 0.75], atol=1e-13)
        np.testing.assert_allclose(cpt_bra(2, 0.0, es).components, [0.75, 1.25], atol=1e-13)

    @pytest.mark.parametrize("t", [0.0, 2.7, -4.1])
    def test_nonorthogonality_is_cosh_and_sinh_two_theta(self, es, t):
        # the C'PT conjugates do NOT give an orthonormal basis
        assert inner(cpt_bra(1, t, es), flavour_ket(1, t, es)) == pytest.approx(1.25, abs=1e-12)
        assert inner(cpt_bra(1, t, es), flavour_ket(2, t, es)) == pytest.approx(0.75, abs=1e-12)
        assert inner(cpt_bra(2, t, es), flavour_ket(2, t, es)) == pytest.approx(1.25, abs=1e-12)

    def test_matches_explicit_eigenbasis_expansion(self, es):
        t = 1.3
        sect_plus = cpt_conjugate(es.eta, es.e_plus).components
        sect_minus = cpt_conjugate(es.eta, es.e_minus).components
        expected = (es.cosh_theta * xi("plus", t, es).conjugate() * sect_plus
                    + es.sinh_theta * xi("minus", t, es).conjugate() * sect_minus)
        np.testing.assert_allclose(cpt_bra(1, t, es).components, expected, atol=1e-13)


class TestCprimeKet:
    def test_time_zero_worked_point(self, es):
        np.testing.assert_allclose(cprime_ket(2, 0.0, es).components, [0.75, -1.25], atol=1e-13)

    def test_orthogonal_to_cpt_bra_of_other_flavour(self, es):
        assert inner(cpt_bra(1, 0.0, es), cprime_ket(2, 0.0, es)) == pytest.approx(0.0, abs=1e-12)

    def test_reduces_to_parity_action_at_zero_mixing(self):
        es0 = eigensystem(make_params(2.0, 1.0, 0.0))
        np.testing.assert_allclose(cprime_ket(2, 0.0, es0).components, [0.0, -1.0], atol=1e-14)

    def test_equals_expansion_with_flipped_minus_coefficient(self, es):
        t = 0.8
        expected = (es.sinh_theta * xi("plus", t, es) * es.e_plus
                    - es.cosh_theta * xi("minus", t, es) * es.e_minus)
        np.testing.assert_allclose(cprime_ket(2, t, es).components, expected, atol=1e-13)


class TestPtBra:
    def test_parity_action_at_time_zero(self, es):
        np.testing.assert_allclose(pt_bra(2, 0.0, es).components, [0.0, -1.0], atol=1e-14)

    def test_pairs_with_cprime_ket(self, es):
        value = inner(pt_bra(2, 0.0, es), cprime_ket(2, 0.0, es))
        assert value == pytest.approx(1.25, abs=1e-12)
        normalised = inner(pt_bra(2, 0.0, es, normalised=True),
                           cprime_ket(2, 0.0, es, normalised=True))
        assert normalised == pytest.approx(1.0, abs=1e-12)

    def test_annihilates_other_flavour_ket(self, es):
        assert inner(pt_bra(2, 2.1, es), flavour_ket(1, 2.1, es)) == pytest.approx(0.0, abs=1e-12)


class TestDiracBra:
    def test_real_components_at_time_zero(self, es):
        np.testing.assert_allclose(dirac_bra(1, 0.0, es).components, [1.0, 0.0], atol=1e-14)

    def test_norm_grows_at_half_period(self, es):
        t = math.pi / es.delta_omega
        value = inner(dirac_bra(1, t, es), flavour_ket(1, t, es))
        assert value == pytest.approx(2.125, abs=1e-12)

    def test_flavours_orthogonal_only_at_time_zero(self, es):
        assert inner(dirac_bra(1, 0.0, es), flavour_ket(2, 0.0, es)) == pytest.approx(0.0, abs=1e-14)
        assert abs(inner(dirac_bra(1, 0.9, es), flavour_ket(2, 0.9, es))) > 1e-2


class TestMixedBasis:
    @pytest.mark.parametrize("t", TIME_GRID)
    def test_orthonormal_for_all_times_and_etas(self, t):
        for es in systems():
            for i in (1, 2):
                for j in (1, 2):
                    value = inner(mixed_basis_bra(i, t, es), mixed_basis_ket(j, t, es))
                    assert value == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)

    def test_dispatch(self, es):
        assert mixed_basis_ket(1, 0.0, es).kind == "ket"
        assert mixed_basis_ket(2, 0.0, es).kind == "cprime_ket"
        assert mixed_basis_bra(1, 0.0, es).kind == "cpt_bra"
        assert mixed_basis_bra(2, 0.0, es).kind == "pt_bra"

    def test_orthonormal_for_swapped_orientation(self, swapped_es):
        for i in (1, 2):
            for j in (1, 2):
                value = inner(mixed_basis_bra(i, 1.1, swapped_es),
                              mixed_basis_ket(j, 1.1, swapped_es))
                assert value == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)


def test_cprime_section_identity():
    """(C'^T v)^sect = v^dag P for random complex vectors: reflecting a ket
    with C' turns its C'PT bra into the plain PT bra."""
    rng = np.random.default_rng(5)
    par = parity_matrix()
    for eta in ETA_GRID:
        cp_t = cprime_matrix(eta).T
        for _ in range(100):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            lhs = cpt_conjugate(eta, cp_t @ v).components
            np.testing.assert_allclose(lhs, v.conj() @ par, atol=1e-12)
