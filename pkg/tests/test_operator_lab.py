import math

import numpy as np
import pytest

from mexhat.errors import ParameterError, TruncationError
from mexhat.fock_space import FockVector, g_to_fock
from mexhat.operator_lab import (
    annihilation,
    matrix_element_oracle,
    oracle_matrix,
    pure_squeeze_check,
    quantum_transform,
    raising_exponential,
    squeeze_translate_matrix,
    two_route_equivalence,
)
from mexhat.transform_engine import HermiteSignal, transform_analytic
from mexhat.wavelet_builder import build_wavelet

from conftest import CASE1, CASE2, CASE3

MUS = (0.5, 1.0, math.e, 2.0)
SS = (0.0, 1.0, -1.0)
GRID_MU = np.linspace(0.5, 2, 5)
GRID_S = np.linspace(-2, 2, 5)


def series_exp(m):
    """Plain Taylor sum of a nilpotent matrix; terminates after dim terms."""
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, m.shape[0] + 1):
        term = term @ m / k
        if not np.any(term):
            break
        out = out + term
    return out


class TestFactors:
    @pytest.mark.parametrize("alpha, beta", [(0.3, -0.4), (-0.25, 0.9), (0.0, 1.1)])
    def test_closed_form_matches_matrix_series(self, alpha, beta):
        dim = 24
        ad = annihilation(dim).T
        want = series_exp(alpha * ad @ ad + beta * ad)
        np.testing.assert_allclose(raising_exponential(alpha, beta, dim), want, atol=1e-12, rtol=1e-12)

    def test_dimension_independent(self):
        small = squeeze_translate_matrix(1.7, 0.6, 16).entries
        big = squeeze_translate_matrix(1.7, 0.6, 80).entries[:16, :16]
        np.testing.assert_allclose(small, big, rtol=1e-14, atol=1e-16)


class TestSqueezeTranslate:
    def test_identity(self):
        u = squeeze_translate_matrix(1.0, 0.0, 32)
        np.testing.assert_allclose(u.entries, np.eye(32), atol=1e-12)
        assert u.isometry_defect < 1e-12

    @pytest.mark.parametrize("mu", [0.3, 0.5, 2.0, 5.0])
    def test_vacuum_element(self, mu):
        assert squeeze_translate_matrix(mu, 0.0, 16).entries[0, 0] == pytest.approx(
            math.sqrt(2 * mu / (1 + mu * mu)), abs=1e-12)

    def test_columns_against_oracle(self):
        u = squeeze_translate_matrix(2.0, 1.0, 32).entries
        np.testing.assert_allclose(u[:9, :9], oracle_matrix(2.0, 1.0, 9), atol=1e-8)

    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("s", SS)
    def test_oracle_agreement(self, mu, s):
        u = squeeze_translate_matrix(mu, s, 64).entries[:13, :13]
        np.testing.assert_allclose(u, oracle_matrix(mu, s, 13), atol=1e-8, rtol=0)

    @pytest.mark.parametrize("mu", MUS)
    def test_parity_exact(self, mu):
        u = squeeze_translate_matrix(mu, 0.0, 64).entries[:13, :13]
        o = oracle_matrix(mu, 0.0, 13)
        m, n = np.indices(u.shape)
        odd = (m + n) % 2 == 1
        assert not np.any(u[odd]) and not np.any(o[odd])

    def test_low_columns_nearly_isometric(self):
        u = squeeze_translate_matrix(1.5, 0.5, 96)
        assert u.isometry_defect < 1e-6
        assert u.dim == 96 and u.lam == pytest.approx(math.log(1.5))

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            squeeze_translate_matrix(0.0, 0.0, 16)
        with pytest.raises(ParameterError):
            squeeze_translate_matrix(1.0, 0.0, 7)


class TestOracle:
    @pytest.mark.parametrize("m, n", [(0, 0), (3, 3), (2, 5)])
    def test_identity(self, m, n):
        assert matrix_element_oracle(1.0, 0.0, m, n) == pytest.approx(float(m == n), abs=1e-13)

    @pytest.mark.parametrize("mu", [0.4, 1.9, 3.0])
    def test_vacuum(self, mu):
        assert matrix_element_oracle(mu, 0.0, 0, 0) == pytest.approx(math.sqrt(2 * mu / (1 + mu * mu)), abs=1e-13)

    @pytest.mark.parametrize("mu", [0.4, 1.9, 3.0])
    def test_parity(self, mu):
        assert matrix_element_oracle(mu, 0.0, 0, 1) == 0.0

    def test_bad_mu(self):
        with pytest.raises(ParameterError):
            matrix_element_oracle(-1.0, 0.0, 0, 0)


class TestPureSqueeze:
    def test_unit_scale(self):
        assert pure_squeeze_check(1.0, 32).max_deviation == 0.0

    @pytest.mark.parametrize("mu", [2.0, 0.5])
    def test_matches_generator_exponential(self, mu):
        rep = pure_squeeze_check(mu, 64)
        assert rep.block == 16
        assert rep.max_deviation < 1e-8

    def test_inverse_scales_compose(self):
        # the product sums over intermediate states, so it does feel the cutoff
        prod = squeeze_translate_matrix(0.5, 0.0, 64) @ squeeze_translate_matrix(2.0, 0.0, 64)
        np.testing.assert_allclose(prod[:4, :4], np.eye(4), atol=1e-10)
        prod = squeeze_translate_matrix(0.5, 0.0, 128) @ squeeze_translate_matrix(2.0, 0.0, 128)
        np.testing.assert_allclose(prod[:16, :16], np.eye(16), atol=1e-9)


class TestQuantumTransform:
    def test_self(self):
        psi = g_to_fock(CASE1, 32)
        assert quantum_transform(psi, psi, 1.0, 0.0) == pytest.approx(0.75, abs=1e-14)

    def test_vacuum_overlap(self):
        psi = g_to_fock(CASE1, 32)
        assert quantum_transform(psi, FockVector.basis(0, 32), 1.0, 0.0) == pytest.approx(0.5, abs=1e-15)

    def test_gaussian_signal_two_routes(self, mexican_hat):
        psi = g_to_fock(CASE1, 64)
        q = quantum_transform(psi, FockVector.basis(0, 64), 2.0, 1.0)
        gaussian = HermiteSignal(build_wavelet([1], check=False).envelope)
        assert q == pytest.approx(transform_analytic(mexican_hat, gaussian, 2.0, 1.0), abs=1e-6)

    def test_dimension_mismatch(self):
        with pytest.raises(ParameterError):
            quantum_transform(FockVector.basis(0, 16), FockVector.basis(0, 32), 1.0, 0.0)


class TestTwoRoute:
    def test_case1_on_case2(self):
        assert two_route_equivalence(CASE1, CASE2, GRID_MU, GRID_S, 64) < 1e-6

    def test_identity_row(self):
        assert two_route_equivalence(CASE1, CASE2, [1.0], GRID_S[2:3], 64) < 1e-12

    def test_generic_lambda(self):
        assert two_route_equivalence(CASE1, [1], [math.e], [0.0], 64) < 1e-8

    def test_higher_order_wavelet(self):
        assert two_route_equivalence(CASE3, CASE2, GRID_MU, GRID_S, 64) < 1e-6

    def test_truncation_monotone(self):
        d48 = two_route_equivalence(CASE1, CASE2, GRID_MU, GRID_S, 48)
        d96 = two_route_equivalence(CASE1, CASE2, GRID_MU, GRID_S, 96)
        assert d96 <= d48

    def test_tail_mass_guard(self):
        with pytest.raises(TruncationError):
            two_route_equivalence(CASE1, [0] * 10 + [1], [1.0], [0.0], 12)
