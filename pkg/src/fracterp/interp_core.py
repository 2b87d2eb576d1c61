"""Scalar interpolation kernels: Pochhammer-Newton polynomials, Newton
forward-difference series, sinc, and the closed-form periodic weights.

Everything here interpolates integer samples at the nonnegative integers
(Newton) or at all integers (Shannon/sinc). Infinite series are cut off by a
:class:`TruncationPolicy`; a series that does not meet its tolerance issues a
:class:`~fracterp.errors.NotConvergedWarning` (or raises
:class:`~fracterp.errors.NotConverged` when the policy is strict).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, NotConverged, NotConvergedWarning

EPS = np.finfo(float).eps

__all__ = [
    "TruncationPolicy",
    "SeriesResult",
    "NewtonCoefficients",
    "PeriodicWeights",
    "pochhammer_newton",
    "pochhammer_newton_sequence",
    "newton_coefficients",
    "newton_eval",
    "newton_eval_power",
    "sinc",
    "shannon_eval_power",
    "shannon_partial_sum",
    "periodic_kernel",
    "periodic_power_weights",
    "accumulate_series",
]


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for an infinite series.

    A series is declared converged once ``tail_window`` consecutive terms
    have norm at most ``abs_tol``. It is always cut at ``max_terms`` terms.
    With ``strict=True`` a non-converged series raises instead of warning.
    """

    max_terms: int = 200
    abs_tol: float = 1e-14
    tail_window: int = 3
    strict: bool = False

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if int(self.tail_window) != self.tail_window or self.tail_window < 1:
            raise ValueError(f"tail_window must be a positive integer, got {self.tail_window!r}")
        if not self.abs_tol >= 0:
            raise ValueError(f"abs_tol must be nonnegative, got {self.abs_tol!r}")

    def replace(self, **changes) -> "TruncationPolicy":
        fields = dict(max_terms=self.max_terms, abs_tol=self.abs_tol,
                      tail_window=self.tail_window, strict=self.strict)
        fields.update(changes)
        return TruncationPolicy(**fields)


@dataclass
class SeriesResult:
    """Value of a truncated series plus the diagnostics of how it was cut."""

    value: Any
    terms: int
    tail: float
    converged: bool
    info: dict = field(default_factory=dict)

    def provenance(self) -> dict:
        out = {"terms": self.terms, "tail_estimate": float(self.tail),
               "converged": bool(self.converged)}
        out.update(self.info)
        return out


def finish(result: SeriesResult, policy: TruncationPolicy, what: str,
           full_output: bool = False):
    """Report non-convergence according to ``policy`` and unwrap the result."""
    if not result.converged:
        msg = (f"{what}: tail estimate {result.tail:.3g} above abs_tol "
               f"{policy.abs_tol:.3g} after {result.terms} terms")
        if policy.strict:
            raise NotConverged(msg, result)
        warnings.warn(msg, NotConvergedWarning, stacklevel=3)
    return result if full_output else result.value


def _norm(x) -> float:
    if np.ndim(x) == 0:
        return abs(complex(x))
    a = np.asarray(x)
    if a.ndim == 2:
        return float(np.linalg.norm(a, "fro"))
    return float(np.max(np.abs(a))) if a.size else 0.0


def accumulate_series(terms: Iterable, policy: TruncationPolicy,
                      norm: Callable[[Any], float] = _norm,
                      finite_is_exact: bool = True) -> SeriesResult:
    """Sum ``terms`` with compensated (Neumaier) summation under ``policy``.

    ``terms`` may be finite. With ``finite_is_exact`` running out of terms
    means the series terminated exactly; otherwise it is judged by the size
    of the last terms like any other cut.
    """
    total = None
    comp = None
    small = 0
    recent: list[float] = []
    n = 0
    exhausted = True
    for term in terms:
        if n >= policy.max_terms:
            exhausted = False
            break
        t = np.asarray(term, dtype=complex)
        if total is None:
            total = t.copy()
            comp = np.zeros_like(t)
        else:
            s = total + t
            big = np.abs(total) >= np.abs(t)
            comp = comp + np.where(big, (total - s) + t, (t - s) + total)
            total = s
        n += 1
        size = norm(t)
        recent.append(size)
        if len(recent) > policy.tail_window:
            recent.pop(0)
        small = small + 1 if size <= policy.abs_tol else 0
        if small >= policy.tail_window:
            exhausted = False
            break
    if total is None:
        return SeriesResult(0j, 0, 0.0, True)
    value = total + comp
    if value.ndim == 0:
        value = complex(value)
    tail = max(recent) if recent else 0.0
    if exhausted and finite_is_exact:
        return SeriesResult(value, n, 0.0, True)
    converged = small >= policy.tail_window or (exhausted and tail <= policy.abs_tol)
    return SeriesResult(value, n, tail, converged)


# ---------------------------------------------------------------------------
# Pochhammer-Newton polynomials and Newton series
# ---------------------------------------------------------------------------

def pochhammer_newton(n: int, alpha: complex) -> complex:
    """P_n(alpha) = (-1)^n binom(alpha, n), by the product form.

    The product form has no poles, unlike the Gamma-ratio form, so it is
    valid for every complex ``alpha`` including the nonpositive integers.
    """
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    p = 1.0 + 0j if isinstance(alpha, complex) else 1.0
    for m in range(int(n)):
        p *= (m - alpha) / (m + 1)
    return p


def pochhammer_newton_sequence(count: int, alpha: complex) -> np.ndarray:
    """P_0(alpha), ..., P_{count-1}(alpha) by the same running product.

    For a nonnegative integer ``alpha`` the values are the exact signed
    binomial coefficients.
    """
    out = np.empty(count, dtype=complex)
    m = _nonneg_int(alpha)
    if m is not None:
        out[:] = [(-1) ** k * math.comb(m, k) for k in range(count)]
        return out
    p = 1.0 + 0j
    for m in range(count):
        out[m] = p
        p *= (m - alpha) / (m + 1)
    return out


def _nonneg_int(s) -> int | None:
    z = complex(s)
    if z.imag == 0 and z.real >= 0 and float(z.real).is_integer():
        return int(z.real)
    return None


@dataclass(frozen=True)
class NewtonCoefficients:
    """c_n = sum_k P_k(n) f(k) for the samples f(0..N), with origin fixed at 0.

    ``noise`` bounds the rounding error of each c_n given the sample errors;
    the alternating binomial sum amplifies sample noise roughly by 2^n.
    ``samples`` keeps the source values so node evaluations can be done exactly.
    """

    values: np.ndarray
    noise: np.ndarray
    origin: int = 0
    samples: np.ndarray | None = None

    def __len__(self):
        return len(self.values)


def _fsum_complex(parts: Sequence[complex]) -> complex:
    return complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))


def newton_coefficients(samples, sample_error=None) -> NewtonCoefficients:
    """Newton-series coefficients of integer samples ``f(0), ..., f(N)``.

    ``c_n = sum_{k<=n} (-1)^k C(n, k) f(k) = (-1)^n Delta^n f(0)``. Each sum is
    accumulated exactly (``math.fsum``) so the only error left is that of the
    samples themselves. ``sample_error`` is the absolute error of each sample
    (scalar or per-sample); it defaults to one ulp of each value.
    """
    f = np.atleast_1d(np.asarray(samples, dtype=complex))
    if f.ndim != 1 or f.size == 0:
        raise ValueError("samples must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(f)):
        raise ValueError("samples must be finite")
    if sample_error is None:
        err = EPS * np.abs(f)
    else:
        err = np.broadcast_to(np.asarray(sample_error, dtype=float), f.shape) + EPS * np.abs(f)
    vals = np.empty(f.size, dtype=complex)
    noise = np.empty(f.size)
    fl = [complex(v) for v in f]
    for n in range(f.size):
        parts = []
        bound = 0.0
        for k in range(n + 1):
            c = math.comb(n, k)
            parts.append((-c if k % 2 else c) * fl[k])
            bound += c * err[k]
        vals[n] = _fsum_complex(parts)
        noise[n] = bound
    return NewtonCoefficients(vals, noise, samples=f)


def _exact_node_sum(samples, m: int) -> complex:
    """``sum_{n<=m} P_n(m) c_n`` in rational arithmetic, with every c_n rebuilt
    exactly from the samples. In floating point the large alternating
    coefficients cancel and lose digits; here the finite sum is exact."""
    parts = []
    for attr in ("real", "imag"):
        f = [Fraction(float(getattr(v, attr))) for v in samples[:m + 1]]
        total = Fraction(0)
        for n in range(m + 1):
            cn = sum(((-1) ** k * math.comb(n, k) * f[k] for k in range(n + 1)), Fraction(0))
            total += (-1) ** n * math.comb(m, n) * cn
        parts.append(float(total))
    return complex(parts[0], parts[1])


def newton_eval(coeffs: NewtonCoefficients, s: complex,
                policy: TruncationPolicy | None = None, full_output: bool = False):
    """Evaluate ``sum_n c_n P_n(s)`` under ``policy``.

    At a nonnegative integer ``s = m`` inside the sample range the sum stops at
    ``n = m`` and reproduces the sample exactly. Otherwise terms are added
    until the tail window is met, the coefficients run out, or the next
    coefficient is dominated by its rounding noise (further terms would only
    add noise); the last two cases are reported as not converged unless the
    tail is already below tolerance.
    """
    policy = policy or TruncationPolicy()
    c = coeffs.values
    m = _nonneg_int(s)
    if m is not None and m < len(c):
        if coeffs.samples is not None:
            value = _exact_node_sum(coeffs.samples, m)
        else:
            p = pochhammer_newton_sequence(m + 1, s)
            value = _fsum_complex([c[n] * p[n] for n in range(m + 1)])
        return finish(SeriesResult(value, m + 1, 0.0, True, {"exact_node": True, "stop": "exact_node"}),
                      policy, "newton_eval", full_output)

    limit = min(len(c), policy.max_terms)
    p = pochhammer_newton_sequence(limit, s)
    stop = "max_terms" if len(c) >= policy.max_terms else "samples_exhausted"

    def terms():
        nonlocal stop
        for n in range(limit):
            t = c[n] * p[n]
            if n > 0 and coeffs.noise[n] * abs(p[n]) > max(policy.abs_tol, abs(t)):
                stop = "noise_floor"
                return
            yield t

    res = accumulate_series(terms(), policy, finite_is_exact=False)
    if stop != "noise_floor" and res.terms < limit:
        stop = "tail_window"
    res.info["stop"] = stop
    return finish(res, policy, "newton_eval", full_output)


def newton_eval_power(x: complex, alpha: complex, policy: TruncationPolicy | None = None,
                      full_output: bool = False):
    """Principal ``x**alpha`` from the Newton series of ``k -> x**k``.

    The forward differences of ``k -> x**k`` are known in closed form,
    ``sum_k P_k(n) x^k = (1 - x)^n``, so the coefficients are formed directly
    instead of by the alternating binomial sum, which loses all accuracy past
    n ~ 40 in double precision. Requires ``|x - 1| < 1`` unless ``alpha`` is a
    nonnegative integer.
    """
    policy = policy or TruncationPolicy()
    x = complex(x)
    m = _nonneg_int(alpha)
    if m is None and not abs(x - 1) < 1:
        raise DomainError(f"|x - 1| = {abs(x - 1):.3g} >= 1: Newton series for x**alpha diverges")
    q = 1 - x

    if m is not None:
        # finite sum; evaluated in rationals because the alternating binomial
        # terms cancel badly when x is small
        qr, qi = Fraction(q.real), Fraction(q.imag)
        re, im = Fraction(0), Fraction(0)
        pr, pi_ = Fraction(1), Fraction(0)
        for n in range(m + 1):
            c = (-1) ** n * math.comb(m, n)
            re += c * pr
            im += c * pi_
            pr, pi_ = pr * qr - pi_ * qi, pr * qi + pi_ * qr
        res = SeriesResult(complex(float(re), float(im)), m + 1, 0.0, True,
                           {"exact_integer": True})
        return finish(res, policy, "newton_eval_power", full_output)

    def terms():
        c, p, n = 1.0 + 0j, 1.0 + 0j, 0
        while True:
            yield c * p
            c *= q
            p *= (n - alpha) / (n + 1)
            n += 1

    res = accumulate_series(terms(), policy)
    return finish(res, policy, "newton_eval_power", full_output)


# ---------------------------------------------------------------------------
# sinc / Shannon
# ---------------------------------------------------------------------------

def _sinpi(x):
    """sin(pi x) with the argument reduced to [-1/2, 1/2] first."""
    x = np.asarray(x, dtype=float)
    k = np.round(x)
    r = x - k
    sign = np.where(np.mod(k, 2) == 0, 1.0, -1.0)
    return sign * np.sin(np.pi * r)


def sinc(x):
    """Normalized sinc, sin(pi x)/(pi x), exact 1 at 0 and exact 0 at nonzero integers."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-4
    u2 = (np.pi * x[small]) ** 2
    out[small] = 1 - u2 / 6 + u2 * u2 / 120
    big = ~small
    xb = x[big]
    out[big] = _sinpi(xb) / (np.pi * xb)
    out[big & (x == np.round(x))] = 0.0
    return out if out.ndim else float(out)


def shannon_partial_sum(alpha: float, power, policy: TruncationPolicy) -> SeriesResult:
    """Symmetric partial sums of ``sum_n sinc(alpha - n) X^n``.

    ``power(n)`` returns X^n for any integer n. Pairs ``n, -n`` are added
    together; at pair counts 8, 16, 32, ... the change ``S_N - S_{N/2}`` is
    used as the tail estimate (the remainder decays like 1/N, so this is the
    same order as the error). Summation stops at the first checkpoint whose
    estimate is within ``abs_tol``, or at ``max_terms`` pairs.
    """
    alpha = float(alpha)
    total = sinc(alpha) * power(0)
    snapshots = {0: total}
    tail = np.inf
    n = 0
    while n < policy.max_terms:
        n += 1
        total = total + sinc(alpha - n) * power(n) + sinc(alpha + n) * power(-n)
        if n & (n - 1) == 0:
            snapshots[n] = total
            if n >= 8:
                tail = _norm(total - snapshots[n // 2])
                if tail <= policy.abs_tol:
                    break
    if n & (n - 1) != 0:
        ref = 1 << ((n // 2).bit_length() - 1) if n >= 2 else 0
        tail = _norm(total - snapshots[ref])
    if np.ndim(total) == 0:
        total = complex(total)
    return SeriesResult(total, 2 * n + 1, float(tail), bool(tail <= policy.abs_tol),
                        {"pairs": n})


def shannon_eval_power(theta: float, alpha: float, policy: TruncationPolicy | None = None,
                       full_output: bool = False):
    """Symmetric partial sums of ``sum_n sinc(alpha - n) e^{i n theta}``.

    For theta in (-pi, pi) the limit is ``e^{i alpha theta}``; at theta = pi
    the sum converges to ``cos(pi alpha)`` rather than ``(-1)**alpha``. The
    series is only conditionally convergent, so it is always summed in
    symmetric pairs. Convergence is O(1/N).
    """
    policy = policy or SHANNON_POLICY
    theta = float(theta)
    if not -np.pi < theta <= np.pi:
        raise DomainError("theta must lie in (-pi, pi]")
    alpha = float(alpha)
    if alpha.is_integer():
        res = SeriesResult(complex(np.exp(1j * alpha * theta)), 1, 0.0, True, {"exact_integer": True})
        return finish(res, policy, "shannon_eval_power", full_output)
    x = np.exp(1j * theta)
    res = shannon_partial_sum(alpha, lambda n: x ** n, policy)
    return finish(res, policy, "shannon_eval_power", full_output)


SHANNON_POLICY = TruncationPolicy(max_terms=4096, abs_tol=1e-3, tail_window=1)


# ---------------------------------------------------------------------------
# periodic closed forms
# ---------------------------------------------------------------------------

def periodic_kernel(N: int, x):
    """Sum over m of sinc(x - N m): (1/N) sin(pi x) cot(pi x / N) for even N,
    (1/N) sin(pi x) csc(pi x / N) for odd N.

    Equals 1 on multiples of N and 0 on the other integers. The argument is
    reduced modulo N first; near the removable singularity a short series is
    used.
    """
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    N = int(N)
    x = np.asarray(x, dtype=float)
    r = x - N * np.round(x / N)
    out = np.empty_like(r)
    small = np.abs(r) < 1e-4
    u2 = (np.pi * r[small]) ** 2
    if N % 2 == 0:
        out[small] = 1 - u2 / 6 - u2 / (3 * N * N)
    else:
        out[small] = 1 - u2 / 6 + u2 / (6 * N * N)
    big = ~small
    rb = r[big]
    ratio = _sinpi(rb) / (N * _sinpi(rb / N))
    if N % 2 == 0:
        ratio = ratio * np.cos(np.pi * rb / N)
    out[big] = ratio
    out[big & (r == np.round(r))] = 0.0
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class PeriodicWeights:
    """Weights w_0..w_{N-1} with ``sum_n sinc(alpha - n) c_n = sum_n w_n c_n``
    for every N-periodic sequence c."""

    period: int
    order: float
    weights: np.ndarray

    def apply(self, powers: Sequence) -> Any:
        """Combine ``powers[n]`` (n = 0..N-1) with the weights."""
        total = self.weights[0] * powers[0]
        for w, p in zip(self.weights[1:], powers[1:]):
            total = total + w * p
        return total

    def multiplier(self, lam: complex) -> complex:
        """Scalar factor applied on an eigenvector of eigenvalue ``lam`` (lam^N = 1)."""
        return complex(np.sum(self.weights * lam ** np.arange(self.period)))


def periodic_power_weights(N: int, alpha: float) -> PeriodicWeights:
    alpha = float(alpha)
    w = periodic_kernel(N, alpha - np.arange(N))
    return PeriodicWeights(int(N), alpha, np.asarray(w, dtype=float))
