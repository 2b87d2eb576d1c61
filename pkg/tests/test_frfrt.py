import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracterp import (DegenerateAngle, GridMismatch, Signal, alt_frft, alt_frft_weights,
                      literature_frft, minus_one_projector, periodic_power_weights,
                      refined_translation_power, translation_counterexample)
from fracterp.frfrt import box, dft, dft_eigenprojection, gaussian, idft, l2_distance, parity

from oracles import FROZEN, dense_centred_dft


def random_signal(seed, M=32):
    rng = np.random.default_rng(seed)
    return Signal(rng.normal(size=M) + 1j * rng.normal(size=M), 1 / math.sqrt(M))


class TestDFT:
    @pytest.mark.parametrize("M", [8, 9, 16, 31])
    def test_matches_dense_matrix(self, M):
        v = random_signal(M, M).samples
        assert np.allclose(dft(v), dense_centred_dft(M) @ v, atol=1e-13)

    @pytest.mark.parametrize("M", [8, 9, 64])
    def test_square_is_parity(self, M):
        v = random_signal(1, M).samples
        assert np.abs(dft(dft(v)) - parity(v)).max() < 1e-13
        assert np.abs(idft(dft(v)) - v).max() < 1e-13

    @given(st.integers(0, 1000), st.sampled_from([1, 1j, -1, -1j]))
    def test_eigenprojections(self, seed, lam):
        v = random_signal(seed).samples
        p = dft_eigenprojection(v, lam)
        assert np.abs(dft(p) - lam * p).max() < 1e-12
        assert np.abs(dft_eigenprojection(p, lam) - p).max() < 1e-12

    def test_projections_sum_to_identity(self):
        v = random_signal(3).samples
        total = sum(dft_eigenprojection(v, lam) for lam in (1, 1j, -1, -1j))
        assert np.abs(total - v).max() < 1e-13


class TestWeights:
    def test_examples(self):
        assert np.array_equal(alt_frft_weights(1).w, [0, 1, 0, 0])
        assert np.array_equal(alt_frft_weights(2).w, [0, 0, 1, 0])
        assert np.allclose(alt_frft_weights(0.5).w, FROZEN["alt_weights_half"], atol=1e-15)
        assert np.allclose(alt_frft_weights(0.5).w, periodic_power_weights(4, 0.5).weights)

    @given(st.floats(-4, 4))
    def test_trig_closed_form(self, a):
        if abs(a - round(a)) < 1e-6:
            return
        s = math.sin(math.pi * a) / 4
        cot = lambda t: 1 / math.tan(t)
        ref = [s * cot(math.pi * a / 4), -s * cot(math.pi * (a - 1) / 4),
               -s * math.tan(math.pi * a / 4), s * math.tan(math.pi * (a - 1) / 4)]
        assert np.allclose(alt_frft_weights(a).w, ref, atol=1e-10)

    @given(st.floats(0, 2))
    def test_multipliers(self, a):
        w = alt_frft_weights(a)
        assert abs(w.multiplier(1) - 1) < 1e-12
        assert abs(w.multiplier(1j) - np.exp(0.5j * math.pi * a)) < 1e-12
        assert abs(w.multiplier(-1j) - np.exp(-0.5j * math.pi * a)) < 1e-12
        assert abs(w.multiplier(-1) - math.cos(math.pi * a)) < 1e-12


class TestAltFrft:
    def test_integer_orders(self):
        f = random_signal(5)
        v = f.samples
        assert np.array_equal(alt_frft(f, 0).samples, v)
        assert np.abs(alt_frft(f, 1).samples - dft(v)).max() < 1e-12
        assert np.abs(alt_frft(f, 2).samples - parity(v)).max() < 1e-12
        assert np.abs(alt_frft(f, 3).samples - idft(v)).max() < 1e-12
        assert np.array_equal(alt_frft(f, 4).samples, v)

    @given(st.integers(0, 1000), st.sampled_from([0.25, 0.5, 0.7]),
           st.sampled_from([0.25, 0.5, 0.7]))
    def test_composition_off_minus_one_space(self, seed, a, b):
        v = random_signal(seed).samples
        u = v - minus_one_projector(v)
        f = Signal(u, 1.0)
        lhs = alt_frft(alt_frft(f, a), b).samples
        assert np.abs(lhs - alt_frft(f, a + b).samples).max() < 1e-10

    def test_composition_on_minus_one_space(self):
        p = minus_one_projector(random_signal(2).samples)
        f = Signal(p, 1.0)
        out = alt_frft(alt_frft(f, 0.3), 0.4).samples
        assert np.abs(out - math.cos(0.3 * math.pi) * math.cos(0.4 * math.pi) * p).max() < 1e-12

    @given(st.integers(0, 1000), st.floats(-2, 2))
    def test_unitary_off_minus_one_space(self, seed, a):
        v = random_signal(seed).samples
        u = v - minus_one_projector(v)
        assert abs(np.linalg.norm(alt_frft(Signal(u, 1.0), a).samples) - np.linalg.norm(u)) < 1e-10

    def test_metadata_flags_minus_one_component(self):
        out = alt_frft(box(64), 0.5)
        assert out.meta["minus_one_fraction"] > 0.01
        assert "warning" in out.meta
        clean = Signal(gaussian(64).samples, 1 / 8)
        assert "warning" not in alt_frft(clean, 0.5).meta

    def test_eigen_multipliers(self):
        v = random_signal(9, 64).samples
        a = 0.37
        for lam, mult in [(1, 1), (1j, np.exp(0.5j * math.pi * a)),
                          (-1j, np.exp(-0.5j * math.pi * a)), (-1, math.cos(math.pi * a))]:
            p = dft_eigenprojection(v, lam)
            assert np.abs(alt_frft(Signal(p, 1.0), a).samples - mult * p).max() < 1e-10

    def test_locality_of_smoothness(self):
        f = box(1024)
        n = f.norm()
        alt = np.linalg.norm(alt_frft(f, 1 / 50).samples - f.samples) / n
        lit = np.linalg.norm(literature_frft(f, math.pi / 100).samples - f.samples) / n
        assert alt < 0.15
        assert lit > alt


class TestLiteratureFrft:
    def test_gaussian_is_fixed(self):
        g = gaussian(256)
        assert np.abs(literature_frft(g, math.pi / 2).samples - g.samples).max() < 2e-3

    @pytest.mark.parametrize("phi", [0.3, 1.0, 2.2, -1.2])
    def test_gaussian_any_angle(self, phi):
        g = gaussian(256)
        assert np.abs(literature_frft(g, phi).samples - g.samples).max() < 2e-3

    def test_quarter_turn_near_dft(self):
        f = Signal.from_function(lambda x: np.exp(-np.pi * x ** 2) * np.cos(3 * x), 256)
        assert np.abs(literature_frft(f, math.pi / 2).samples - dft(f.samples)).max() < 2e-3

    def test_additivity(self):
        f = Signal.from_function(lambda x: np.exp(-np.pi * (x - 1) ** 2 / 2), 256)
        lhs = literature_frft(literature_frft(f, 0.6), 0.7).samples
        rhs = literature_frft(f, 1.3).samples
        assert np.linalg.norm(lhs - rhs) / f.norm() < 2e-3

    def test_exact_limits(self):
        f = random_signal(4, 64)
        assert np.array_equal(literature_frft(f, 0.0).samples, f.samples)
        assert np.abs(literature_frft(f, math.pi).samples - parity(f.samples)).max() == 0
        with pytest.raises(DegenerateAngle):
            literature_frft(f, 1e-8, exact_limits=False)

    def test_grid_must_match_dft(self):
        with pytest.raises(GridMismatch):
            literature_frft(Signal(np.ones(16), 0.5), 1.0)


class TestTranslations:
    def test_counterexample(self):
        rep = translation_counterexample(0.5)
        assert rep["max_on_interval"] == 0.0
        assert rep["true_shift_max_on_interval"] == 1.0
        i = int(np.argmin(np.abs(rep["x"] - 0.25)))
        assert rep["values"][i] == pytest.approx(FROZEN["two_over_pi"], abs=1e-15)

    def test_integer_shift_is_exact(self):
        rep = translation_counterexample(1.0)
        assert np.array_equal(rep["values"], rep["true_shift"])

    def test_rational_refinement_single_term(self):
        g = gaussian(1024, step=1 / 64)
        out = refined_translation_power(g, 0.25, 4)
        assert out.meta["terms"] == 1
        assert np.array_equal(out.samples[16:], g.samples[:-16])

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatch):
            refined_translation_power(gaussian(64, step=0.3), 0.5, 2)

    @pytest.mark.parametrize("t", [0.3, 0.7])
    def test_gaussian_error_decreases(self, t):
        g = gaussian(1024, step=1 / 64)
        true = np.exp(-np.pi * (g.x - t) ** 2)
        errs = [l2_distance(refined_translation_power(g, t, k).samples, true, g.step)
                for k in (1, 2, 4, 8)]
        assert all(a > b for a, b in zip(errs, errs[1:]))

    def test_half_shift_k8_beats_k1(self):
        g = gaussian(1024, step=1 / 64)
        true = np.exp(-np.pi * (g.x - 0.5) ** 2)
        e1 = l2_distance(refined_translation_power(g, 0.5, 1).samples, true, g.step)
        e8 = l2_distance(refined_translation_power(g, 0.5, 8).samples, true, g.step)
        assert e8 < e1

    def test_box_error_trend(self):
        b = Signal.from_function(lambda x: ((x >= 0) & (x <= 0.5)).astype(float), 1024, 1 / 64)
        true = ((b.x >= 0.3) & (b.x <= 0.8)).astype(float)
        errs = [l2_distance(refined_translation_power(b, 0.3, k).samples, true, b.step)
                for k in (1, 2, 4, 8)]
        assert all(a >= b for a, b in zip(errs, errs[1:]))
