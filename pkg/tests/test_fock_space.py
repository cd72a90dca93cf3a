import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mexhat.errors import AccuracyError, ParameterError, TruncationError
from mexhat.fock_space import (
    FockVector,
    GCoefficients,
    admissibility_residual,
    coherent_p0_overlap,
    coordinate_bra,
    fock_inner,
    g_to_fock,
    p0_overlap,
    position_wavefunction,
    weight_via_coherent_integral,
)
from mexhat.math_core import admissibility_weight
from mexhat.wavelet_builder import build_wavelet, integral_check, project_admissible

from conftest import CASE1, CASE3, PI_QUARTER


class TestGCoefficients:
    def test_trims_and_is_exact(self):
        g = GCoefficients([0.5, 0, -0.5, 0, 0])
        assert g.g == (Fraction(1, 2), 0, Fraction(-1, 2))

    def test_accepts_strings(self):
        assert GCoefficients(["1/3", "2"]).g == (Fraction(1, 3), 2)

    def test_rejects_nan(self):
        with pytest.raises(ParameterError):
            GCoefficients([math.nan])


class TestGToFock:
    def test_vacuum(self):
        v = g_to_fock([1], 8)
        np.testing.assert_array_equal(v.c, [1] + [0] * 7)

    def test_case1(self):
        v = g_to_fock(CASE1, 8)
        np.testing.assert_allclose(v.c[:3], [0.5, 0, -math.sqrt(2) / 2], rtol=0, atol=1e-16)
        assert not np.any(v.c[3:])

    def test_single_photon(self):
        np.testing.assert_array_equal(g_to_fock([0, 1], 4).c, [0, 1, 0, 0])

    def test_too_small(self):
        with pytest.raises(TruncationError):
            g_to_fock(CASE3, 6)

    def test_tail_mass(self):
        assert g_to_fock(CASE3, 64).tail_mass() == 0.0
        assert g_to_fock([0] * 7 + [1], 8).tail_mass() == pytest.approx(math.factorial(7))


class TestPositionWavefunction:
    def test_examples(self):
        assert position_wavefunction(0, 0.0) == pytest.approx(0.7511255, abs=1e-7)
        assert position_wavefunction(1, 0.0) == 0.0
        want = -2 * (8 * math.sqrt(math.pi)) ** -0.5
        assert position_wavefunction(2, 0.0) == pytest.approx(want, rel=1e-14)
        assert want == pytest.approx(-0.5311259, abs=1e-7)

    def test_matches_coordinate_bra(self):
        xs = np.linspace(-6, 6, 101)
        for x in xs:
            bra = coordinate_bra(x, 13)
            for n in range(13):
                assert bra[n] == pytest.approx(position_wavefunction(n, x), abs=1e-12)

    def test_orthonormal(self):
        x = np.linspace(-15, 15, 6001)
        phis = np.array([position_wavefunction(n, x) for n in range(10)])
        gram = np.trapezoid(phis[:, None, :] * phis[None, :, :], x, axis=-1)
        np.testing.assert_allclose(gram, np.eye(10), atol=1e-10)


class TestP0Overlap:
    def test_case1(self):
        assert p0_overlap(CASE1) == 0.0

    def test_case3(self):
        assert admissibility_residual(CASE3) == 0

    def test_vacuum(self):
        assert p0_overlap([1]) == pytest.approx(PI_QUARTER, rel=1e-15)

    def test_odd_slots_ignored(self):
        assert p0_overlap([0, 5, 0, -7]) == 0.0

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(-2, 2), min_size=2, max_size=12))
    def test_bridge_identity(self, raw):
        """integral of psi over R equals sqrt(2 pi) <p=0|psi>, admissible or not."""
        w = build_wavelet(raw, check=False)
        assert abs(integral_check(w) - math.sqrt(2 * math.pi) * p0_overlap(raw)) < 1e-9


class TestCoherent:
    def test_values(self):
        assert coherent_p0_overlap(0) == pytest.approx(PI_QUARTER)
        assert coherent_p0_overlap(1j) == pytest.approx(PI_QUARTER * math.exp(-0.5))
        assert coherent_p0_overlap(1) == pytest.approx(PI_QUARTER * math.exp(0.5))

    @pytest.mark.parametrize("n, want, tol", [(0, 1, 1e-6), (1, 1, 1e-6), (2, 3, 1e-5)])
    def test_weight_examples(self, n, want, tol):
        assert abs(weight_via_coherent_integral(n) - want) < tol

    @pytest.mark.parametrize("n", range(7))
    def test_agrees_with_weight(self, n):
        assert weight_via_coherent_integral(n) == pytest.approx(admissibility_weight(n), rel=1e-5)

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            weight_via_coherent_integral(7)
        with pytest.raises(ParameterError):
            weight_via_coherent_integral(1, radial_cutoff=5)
        with pytest.raises(ParameterError):
            weight_via_coherent_integral(1, grid=(100, 300))

    def test_accuracy_error_when_unresolved(self, monkeypatch):
        from mexhat import fock_space

        calls = iter([1.0, 2.0])
        monkeypatch.setattr(fock_space, "_polar_integral", lambda *a: next(calls))
        with pytest.raises(AccuracyError):
            fock_space.weight_via_coherent_integral(1)


class TestInner:
    def test_basis(self):
        e0, e1 = FockVector.basis(0, 8), FockVector.basis(1, 8)
        assert fock_inner(e1, e1) == 1
        assert fock_inner(e0, e1) == 0

    def test_case1_norm(self):
        v = g_to_fock(CASE1, 16)
        assert fock_inner(v, v) == pytest.approx(0.75, abs=1e-15)

    def test_antilinear(self):
        u = FockVector([1j, 0])
        v = FockVector([1, 0])
        assert fock_inner(u, v) == -1j

    def test_mismatch(self):
        with pytest.raises(ParameterError):
            fock_inner(FockVector.basis(0, 4), FockVector.basis(0, 5))
