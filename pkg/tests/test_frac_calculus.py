import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracterp import (DomainError, NotConvergedWarning, SampledSignal, TruncationPolicy,
                      frac_derivative_fourier_series, frac_derivative_fourier_transform,
                      frac_derivative_trig, newton_fractional_integral, riemann_liouville)
from fracterp.frac_calculus import integrate_cumulative

from oracles import fd6_derivative, rl_closed_form

FUNCS = {"one": lambda x: np.ones_like(x), "x": lambda x: x, "exp": np.exp,
         "sinpi": lambda x: np.sin(np.pi * x)}


def sampled(name, M=257):
    return SampledSignal.from_function(FUNCS[name], 0.0, 1.0, M)


class TestSampledSignal:
    def test_grid(self):
        f = sampled("x", 5)
        assert f.h == 0.25 and np.allclose(f.x, [0, 0.25, 0.5, 0.75, 1])

    def test_validation(self):
        with pytest.raises(ValueError):
            SampledSignal(1.0, 0.0, [1, 2])
        with pytest.raises(ValueError):
            SampledSignal(0.0, 1.0, [1.0])
        with pytest.raises(ValueError):
            SampledSignal(0.0, 1.0, [1.0, np.nan])


class TestRiemannLiouville:
    @pytest.mark.parametrize("name", ["one", "x"])
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.5])
    def test_closed_forms(self, name, alpha):
        f = sampled(name, 129)
        ref = rl_closed_form(name, alpha, f.x)
        assert np.abs(riemann_liouville(f, alpha).values - ref).max() < 1e-12

    @pytest.mark.parametrize("name", ["exp", "sinpi"])
    def test_smooth_functions_converge(self, name):
        f = sampled(name, 257)
        ref = rl_closed_form(name, 0.5, f.x[::16])
        assert np.abs(riemann_liouville(f, 0.5).values[::16] - ref).max() < 1e-4

    def test_order_one_is_trapezoid(self):
        f = sampled("exp", 101)
        assert np.allclose(riemann_liouville(f, 1.0).values, integrate_cumulative(f).values,
                           atol=1e-12)

    @given(st.floats(0.1, 2.0), st.floats(0.1, 2.0))
    def test_semigroup_on_linear_data(self, a, b):
        f = sampled("x", 65)
        lhs = riemann_liouville(riemann_liouville(f, a), b).values
        ref = rl_closed_form("x", a + b, f.x)
        assert np.abs(lhs - ref).max() < 5e-3

    def test_rejects_nonpositive_order(self):
        with pytest.raises(DomainError):
            riemann_liouville(sampled("x"), 0.0)


class TestNewtonIntegral:
    @pytest.mark.parametrize("alpha", [0.5, 1.5])
    def test_vanishing_at_origin(self, alpha):
        f = sampled("x", 513)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NotConvergedWarning)
            res = newton_fractional_integral(f, alpha, TruncationPolicy(1024, 1e-12, 3))
        assert np.abs(res.values - riemann_liouville(f, alpha).values).max() < 1e-5

    def test_error_decreases_with_terms(self):
        f = sampled("one", 257)
        ref = riemann_liouville(f, 0.5).values
        errs = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NotConvergedWarning)
            for n in (16, 64, 256):
                v = newton_fractional_integral(f, 0.5, TruncationPolicy(n, 0.0, 3)).values
                errs.append(np.abs(v - ref).max())
        assert errs[0] > errs[1] > errs[2]

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_integer_order_is_repeated_integration(self, m):
        f = sampled("exp", 65)
        g = f
        for _ in range(m):
            g = integrate_cumulative(g)
        res = newton_fractional_integral(f, m, full_output=True)
        assert res.terms == m + 1
        assert np.abs(res.value.values - g.values).max() < 1e-12

    def test_rejects_nonpositive_order(self):
        with pytest.raises(DomainError):
            newton_fractional_integral(sampled("x"), -0.5)


class TestDerivatives:
    def periodic(self, func, M=257):
        return SampledSignal.from_function(func, 0.0, 2 * np.pi, M)

    @pytest.mark.parametrize("lam", [1, 2, 5])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0, 1.7])
    def test_series_matches_phase_rule(self, lam, alpha):
        f = self.periodic(lambda x: np.sin(lam * x))
        d = frac_derivative_fourier_series(f, alpha)
        ref = frac_derivative_trig(lam, "sin", alpha)(f.x)
        assert np.abs(d.values - ref).max() < 1e-11

    def test_trig_rule_examples(self):
        d = frac_derivative_trig(2.0, "sin", 0.5)
        assert d.amplitude == pytest.approx(math.sqrt(2))
        assert d.phase_shift == pytest.approx(math.pi / 4)
        c = frac_derivative_trig(1.0, "cos", 1.0)
        assert c(0.0) == pytest.approx(0.0, abs=1e-15)

    def test_order_one_against_finite_differences(self):
        f = self.periodic(lambda x: np.exp(np.sin(x)), 513)
        d = frac_derivative_fourier_series(f, 1.0).values[:-1]
        ref = fd6_derivative(f.values[:-1].real, f.h)
        assert np.abs(d - ref).max() < 1e-8

    @given(st.floats(0.05, 1.5))
    def test_orders_compose_on_zero_mean(self, alpha):
        f = self.periodic(lambda x: np.cos(3 * x) + np.sin(x))
        back = frac_derivative_fourier_series(frac_derivative_fourier_series(f, alpha), -alpha)
        assert np.abs(back.values - f.values).max() < 1e-11

    def test_negative_order_needs_zero_mean(self):
        with pytest.raises(DomainError):
            frac_derivative_fourier_series(self.periodic(lambda x: 1 + np.sin(x)), -0.5)

    def test_real_input_stays_real(self):
        f = self.periodic(lambda x: np.sin(x) + 0.3 * np.cos(7 * x), 64)
        assert np.abs(frac_derivative_fourier_series(f, 0.37).values.imag).max() < 1e-13

    def test_transform_gaussian_first_derivative(self):
        f = SampledSignal.from_function(lambda x: np.exp(-x ** 2), -10, 10, 1025)
        d = frac_derivative_fourier_transform(f, 1.0)
        ref = -2 * f.x * np.exp(-f.x ** 2)
        assert np.abs(d.values - ref).max() < 1e-8

    def test_transform_requires_decay(self):
        f = SampledSignal.from_function(lambda x: np.exp(-x ** 2), -1, 1, 65)
        with pytest.raises(DomainError):
            frac_derivative_fourier_transform(f, 0.5)
