import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracterp import (DirichletSamples, FactorZero, GammaPole, NotConvergedWarning, PoleError,
                      dirichlet_newton_interpolate, eta_integer_values, mellin_interpolate,
                      reciprocal_zeta, zeta_direct, zeta_shifted, zeta_via_eta)
from fracterp.dirichlet_interp import DIRICHLET_POLICY, euler_alternating_sum

from oracles import FROZEN, eta_ref, gamma_ref, newton_partial_sum, zeta_ref


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConvergedWarning)
        yield


class TestSamples:
    def test_eta_values(self):
        s = eta_integer_values(40)
        assert s.values[0] == 0.5
        assert s.values[1].real == pytest.approx(FROZEN["eta_1"], abs=1e-16)
        assert s.values[2].real == pytest.approx(FROZEN["eta_2"], abs=1e-15)
        for k in range(2, 41):
            assert abs(s.values[k] - eta_ref(k)) < 1e-14
        assert s.provenance[0] == "closed form"
        assert s.provenance[5] == "accelerated alternating series"

    def test_euler_transform(self):
        val, _ = euler_alternating_sum(lambda j: 1.0 / (2 * j + 1))
        assert val == pytest.approx(math.pi / 4, abs=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            DirichletSamples([1.0, 2.0])
        with pytest.raises(ValueError):
            DirichletSamples([1.0, np.inf, 2.0])
        with pytest.raises(ValueError):
            DirichletSamples([1.0, 2.0, 3.0], ("closed form",))

    def test_rows(self):
        rows = DirichletSamples([1.0, 2.0, 3.0]).rows()
        assert rows[1] == (1, 2.0, 0.0, "user-supplied")

    @pytest.mark.parametrize("s", [1.5, 2.0, 3.7, -0.5, 0.5 + 3j])
    def test_zeta_direct(self, s):
        assert abs(zeta_direct(s) - zeta_ref(s)) < 1e-12 * max(1.0, abs(zeta_ref(s)))


class TestNewtonInterpolation:
    def test_constant(self):
        assert dirichlet_newton_interpolate(DirichletSamples(np.ones(20)), 2.7) == pytest.approx(1)

    def test_geometric_against_brute_force(self):
        samples = DirichletSamples([2.0 ** -k for k in range(64)])
        res = dirichlet_newton_interpolate(samples, 0.5, full_output=True)
        assert abs(res.value - newton_partial_sum(samples.values, 0.5, res.terms)) < 1e-12
        assert abs(res.value - 2 ** -0.5) < 1e-9

    def test_eta_node(self):
        assert abs(dirichlet_newton_interpolate(eta_integer_values(63), 2) - eta_ref(2)) < 1e-10


class TestZeta:
    @pytest.mark.parametrize("s", [1.5, 2, 2.5, 3, 4])
    def test_reference_values(self, s):
        assert abs(zeta_via_eta(s) - zeta_ref(s)) < 1e-6

    @pytest.mark.parametrize("s,key", [(2, "zeta_2"), (3, "zeta_3")])
    def test_nodes(self, s, key):
        assert abs(zeta_via_eta(s) - FROZEN[key]) < 1e-12

    def test_zero(self):
        assert zeta_via_eta(0) == pytest.approx(-0.5, abs=1e-15)

    @given(st.floats(0.2, 6.0).filter(lambda s: abs(s - 1) > 0.05))
    def test_eta_consistency(self, s):
        factor = 1 - 2 ** (1 - s)
        lhs = zeta_via_eta(s) * factor
        rhs = dirichlet_newton_interpolate(eta_integer_values(DIRICHLET_POLICY.max_terms - 1), s)
        assert abs(lhs - rhs) <= 1e-14 * max(1.0, abs(rhs))

    def test_functional_sanity(self):
        assert abs(zeta_via_eta(2) / zeta_direct(2) - 1) < 1e-6

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta_via_eta(1)

    def test_factor_zero(self):
        with pytest.raises(FactorZero):
            zeta_via_eta(1 + 2j * math.pi / math.log(2))

    def test_complex_argument_left_of_pole(self):
        s = 0.5 + 2j
        assert abs(zeta_via_eta(s) - zeta_ref(s)) < 1e-5


class TestReciprocal:
    def test_nodes(self):
        assert reciprocal_zeta(2) == pytest.approx(FROZEN["recip_zeta_2"], abs=1e-14)
        assert reciprocal_zeta(1) == 0
        assert reciprocal_zeta(0) == -2

    def test_diagnostics(self):
        res = reciprocal_zeta(2.5, full_output=True)
        assert res.info["experimental"]
        assert len(res.info["partial_sums"]) == res.terms
        assert abs(res.value - FROZEN["recip_zeta_2p5"]) < 1e-4


class TestShifted:
    def test_nodes(self):
        assert abs(zeta_shifted(0, 0.5) - FROZEN["zeta_1p5"]) < 1e-12
        assert abs(zeta_shifted(1, 1.0) - FROZEN["zeta_3"]) < 1e-12

    def test_reports_convergence_honestly(self):
        res = zeta_shifted(0.5, 0.5, full_output=True)
        assert abs(res.value - FROZEN["zeta_2"]) > 1e-6
        assert not res.converged

    def test_rejects_nonpositive_eps(self):
        with pytest.raises(ValueError):
            zeta_shifted(0.5, 0.0)


class TestMellin:
    exp_samples = DirichletSamples([0.0] + [math.gamma(k) for k in range(1, 64)])

    @pytest.mark.parametrize("s", [0.5, 1.5, 2.5, 3.3])
    def test_exponential(self, s):
        val = mellin_interpolate(self.exp_samples, s, residue_at_zero=1.0)
        assert abs(val - gamma_ref(s)) < 1e-8

    def test_exponential_rate_two(self):
        samples = DirichletSamples([0.0] + [math.gamma(k) * 2.0 ** -k for k in range(1, 64)])
        assert mellin_interpolate(samples, 2, residue_at_zero=1.0) == pytest.approx(0.25)
        val = mellin_interpolate(samples, 0.5, residue_at_zero=1.0)
        assert abs(val - gamma_ref(0.5) * 2 ** -0.5) < 1e-8

    def test_zero_function(self):
        assert mellin_interpolate(DirichletSamples(np.zeros(10)), 1.7) == 0

    @pytest.mark.parametrize("s", [0, -1, -3])
    def test_gamma_pole(self, s):
        with pytest.raises(GammaPole):
            mellin_interpolate(self.exp_samples, s)

    def test_frozen_half(self):
        val = mellin_interpolate(self.exp_samples, 0.5, residue_at_zero=1.0)
        assert val == pytest.approx(FROZEN["gamma_half"], abs=1e-12)
