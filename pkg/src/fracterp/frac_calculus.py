"""Fractional integration and differentiation of sampled functions.

The integration operator ``J f(x) = int_a^x f`` is discretized by the
cumulative trapezoid rule. Its Newton-series power
(:func:`newton_fractional_integral`) is checked against a product-integration
quadrature of the Riemann-Liouville integral (:func:`riemann_liouville`).
Fractional derivatives are Fourier multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from .errors import DomainError
from .interp_core import (TruncationPolicy, accumulate_series,
                          finish)

FRACINT_POLICY = TruncationPolicy(max_terms=64, abs_tol=1e-10, tail_window=3)


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples ``values[j] = f(a + j h)``, ``h = (b - a)/(M - 1)``."""

    a: float
    b: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 2:
            raise ValueError("a sampled signal needs at least 2 samples")
        if not self.b > self.a:
            raise ValueError("need b > a")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, func, a: float, b: float, M: int) -> "SampledSignal":
        x = np.linspace(a, b, M)
        return cls(a, b, np.asarray(func(x), dtype=complex) * np.ones(M))

    @property
    def M(self) -> int:
        return self.values.size

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.M - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.M)

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.a, self.b, values)


def _cumtrapz(v: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros_like(v)
    out[1:] = np.cumsum(v[1:] + v[:-1]) * (h / 2)
    return out


def integrate_cumulative(f: SampledSignal) -> SampledSignal:
    """Composite trapezoid ``int_a^{x_j} f``; the first value is 0."""
    return f.with_values(_cumtrapz(f.values, f.h))


def _check_order(alpha) -> complex:
    alpha = complex(alpha)
    if not alpha.real > 0:
        raise DomainError(f"fractional integral needs Re(alpha) > 0, got {alpha}")
    return alpha


def newton_fractional_integral(f: SampledSignal, alpha, policy: TruncationPolicy | None = None,
                               rho: float = 1.0, full_output: bool = False):
    """``J**alpha f`` as the Newton series ``sum_n [sum_k P_k(n) rho^(alpha-k) J^k] P_n(alpha) f``.

    The bracket equals ``rho^alpha (I - J/rho)^n`` and is built one cumulative
    integration per term. Since the spectrum of ``J`` is {0}, on the edge of
    every admissible disk, convergence is algebraic: the error at points
    where ``f(a) != 0`` decays only like ``n**-Re(alpha)``.
    """
    policy = policy or FRACINT_POLICY
    alpha = _check_order(alpha)
    rho = float(rho)
    if not rho > 0:
        raise DomainError("rho must be positive")
    h = f.h
    scale = rho ** alpha
    integer = alpha.imag == 0 and float(alpha.real).is_integer()
    m = int(alpha.real) if integer else None
    a = alpha.real if integer else alpha

    def terms():
        v = f.values.copy()
        p = 1.0 + 0j
        k = 0
        while m is None or k <= m:
            yield scale * p * v
            p *= (k - a) / (k + 1)
            v = v - _cumtrapz(v, h) / rho
            k += 1

    if m is not None:
        res = accumulate_series(terms(), TruncationPolicy(max_terms=m + 1, abs_tol=0.0,
                                                          tail_window=m + 2))
    else:
        res = accumulate_series(terms(), policy)
    res.value = f.with_values(res.value)
    res.info.update({"method": "newton", "rho": rho})
    return finish(res, policy, "newton_fractional_integral", full_output)


def _product_weights(alpha: complex, M: int):
    """Second differences of ``m**(alpha+1)`` for m = 1..M-1, in a form that
    keeps relative accuracy for large m."""
    p = alpha + 1
    b = np.empty(max(M - 1, 0), dtype=complex)
    if b.size:
        b[0] = 2.0 ** p - 2.0
    m = np.arange(2, M, dtype=float)
    inv = 1.0 / m
    bracket = np.expm1(p * np.log1p(inv + 0j)) + np.expm1(p * np.log1p(-inv + 0j))
    b[1:] = m.astype(complex) ** p * bracket
    return b


def riemann_liouville(f: SampledSignal, alpha) -> SampledSignal:
    """``(1/Gamma(alpha)) int_a^x f(y) (x - y)^(alpha-1) dy`` by product integration.

    ``f`` is taken piecewise linear between samples and each cell's moments of
    the kernel are integrated exactly, so the weak singularity at ``y = x``
    costs no accuracy. Exact for piecewise-linear ``f``.
    """
    alpha = _check_order(alpha)
    v = f.values
    M = v.size
    h = f.h
    j = np.arange(M, dtype=float)
    p = alpha + 1
    jm1 = np.maximum(j - 1, 0).astype(complex)
    first = jm1 ** p - (j - 1 - alpha) * j.astype(complex) ** alpha
    b = _product_weights(alpha, M)
    inner = np.zeros(M, dtype=complex)
    if M > 2:
        conv = np.convolve(b, v[1:])  # conv[j-2] = sum_{k=1}^{j-1} b_{j-k} f_k
        inner[2:] = conv[: M - 2]
    out = (h ** alpha / gamma(alpha + 2)) * (first * v[0] + inner + v)
    out[0] = 0
    return f.with_values(out)


# ---------------------------------------------------------------------------
# fractional derivatives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrigDerivative:
    """``D^alpha`` of ``sin(lam x)`` or ``cos(lam x)``: ``amplitude * trig(lam x + phase_shift)``."""

    kind: str
    lam: float
    amplitude: float
    phase_shift: float

    def __call__(self, x):
        trig = np.sin if self.kind == "sin" else np.cos
        return self.amplitude * trig(self.lam * np.asarray(x) + self.phase_shift)


def frac_derivative_trig(lam: float, kind: str, alpha: float) -> TrigDerivative:
    if not lam > 0:
        raise DomainError("lambda must be positive")
    if kind not in ("sin", "cos"):
        raise ValueError("kind must be 'sin' or 'cos'")
    return TrigDerivative(kind, float(lam), float(lam) ** alpha, np.pi * alpha / 2)


def _derivative_multiplier(omega: np.ndarray, alpha: float, mean_ok: bool) -> np.ndarray:
    """Principal ``(i omega)**alpha``, with the omega = 0 mode handled by limit.

    For an even number of modes the Nyquist frequency stands for both signs,
    so it gets the real part of the multiplier.
    """
    alpha = float(alpha)
    mult = np.zeros(omega.shape, dtype=complex)
    nz = omega != 0
    mult[nz] = np.abs(omega[nz]) ** alpha * np.exp(1j * np.sign(omega[nz]) * np.pi * alpha / 2)
    if omega.size % 2 == 0 and omega.size > 1:
        k = omega.size // 2
        mult[k] = abs(omega[k]) ** alpha * np.cos(np.pi * alpha / 2)
    if alpha == 0:
        mult[~nz] = 1.0
    elif alpha < 0 and not mean_ok:
        raise DomainError("negative order on a signal with nonzero mean: 0**alpha undefined")
    return mult


def frac_derivative_fourier_series(f: SampledSignal, alpha: float) -> SampledSignal:
    """``D^alpha`` of one period of ``f`` on ``[a, b)`` via its Fourier coefficients.

    The last sample is treated as the periodic copy of the first and left out
    of the transform. Coefficient ``n`` is multiplied by
    ``(i 2 pi n/(b - a))**alpha`` (principal branch), so real signals stay
    real and sin/cos obey the phase-shift rule.
    """
    v = f.values[:-1]
    K = v.size
    c = np.fft.fft(v)
    n = np.fft.fftfreq(K, d=1.0 / K)
    mean_ok = abs(c[0]) <= 1e-12 * max(1.0, float(np.max(np.abs(c))))
    mult = _derivative_multiplier(2 * np.pi * n / (f.b - f.a), alpha, mean_ok)
    out = np.fft.ifft(c * mult)
    return f.with_values(np.append(out, out[0]))


def frac_derivative_fourier_transform(f: SampledSignal, alpha: float,
                                      decay_tol: float = 1e-8) -> SampledSignal:
    """``D^alpha f`` as the multiplier ``(2 pi i y)**alpha`` on the discrete
    frequency grid. ``f`` must have decayed to below ``decay_tol`` at both
    ends, otherwise the periodic wrap-around of the FFT corrupts the result."""
    v = f.values
    if abs(v[0]) >= decay_tol or abs(v[-1]) >= decay_tol:
        raise DomainError("signal has not decayed at the window ends; the transform would alias")
    y = np.fft.fftfreq(v.size, d=f.h)
    c = np.fft.fft(v)
    mean_ok = abs(c[0]) <= 1e-12 * max(1.0, float(np.max(np.abs(c))))
    mult = _derivative_multiplier(2 * np.pi * y, alpha, mean_ok)
    return f.with_values(np.fft.ifft(c * mult))
