"""Newton interpolation of Dirichlet series from their values at 0, 1, 2, ...

A Dirichlet series ``g(s) = sum a_n n^-s`` is determined on the right
half-plane by ``g(0), g(1), ...`` through the Newton series
``g(s) = sum_n [sum_k P_k(n) g(k)] P_n(s)``. Applied to the Dirichlet eta
function this gives the Riemann zeta function away from ``s = 1``.

Sample tables are built once per size and cached; they are read-only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gamma

from .errors import FactorZero, GammaPole, PoleError
from .interp_core import (EPS, SeriesResult, TruncationPolicy, finish,
                          newton_coefficients, newton_eval,
                          pochhammer_newton_sequence)

DIRICHLET_POLICY = TruncationPolicy(max_terms=64, abs_tol=1e-10, tail_window=3)

PROVENANCE_TAGS = ("closed form", "accelerated alternating series", "direct series",
                   "user-supplied")

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class DirichletSamples:
    """Values ``g(0), ..., g(N)`` with a provenance tag and an absolute error
    estimate for each entry."""

    values: np.ndarray
    provenance: tuple = ()
    errors: np.ndarray | None = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 3:
            raise ValueError("need samples g(0), ..., g(N) with N >= 2")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        prov = tuple(self.provenance) or ("user-supplied",) * v.size
        if len(prov) != v.size:
            raise ValueError("one provenance tag per sample")
        err = self.errors
        if err is not None:
            err = np.broadcast_to(np.asarray(err, dtype=float), v.shape).copy()
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "provenance", prov)
        object.__setattr__(self, "errors", err)

    @property
    def N(self) -> int:
        return self.values.size - 1

    def rows(self):
        """``(k, re, im, provenance)`` tuples, the CSV export layout."""
        return [(k, v.real, v.imag, p) for k, (v, p) in enumerate(zip(self.values, self.provenance))]

    @classmethod
    def from_function(cls, g, N: int, tag: str = "user-supplied") -> "DirichletSamples":
        return cls(np.array([g(k) for k in range(N + 1)], dtype=complex), (tag,) * (N + 1))


# ---------------------------------------------------------------------------
# sample sources
# ---------------------------------------------------------------------------

def euler_alternating_sum(a, head: int = 12, depth: int = 60) -> tuple[float, float]:
    """``sum_{j>=0} (-1)^j a(j)`` for slowly decreasing ``a``.

    The first ``head`` terms are added directly; the tail is summed by Euler's
    transform ``sum_i (-1)^i b_i = sum_n (-1)^n (Delta^n b)_0 / 2^(n+1)``.
    Returns the sum and the size of the last transformed term used.
    """
    total = math.fsum((-1) ** j * a(j) for j in range(head))
    b = np.array([a(head + i) for i in range(depth)], dtype=float)
    tail = []
    last = abs(b[0])
    for n in range(depth):
        t = b[0] / 2.0 ** (n + 1)
        tail.append(-t if n % 2 else t)
        last = abs(t)
        if last < 1e-18 * max(1.0, abs(total)):
            break
        b = np.diff(b)
    tail_sum = math.fsum(tail)
    if head % 2:
        tail_sum = -tail_sum
    return total + tail_sum, last


def eta_value(k: int) -> tuple[float, str, float]:
    """``eta(k)`` for an integer ``k >= 0``: value, provenance, error estimate."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 0.5, "closed form", 0.0
    if k == 1:
        return _LN2, "closed form", EPS * _LN2
    value, last = euler_alternating_sum(lambda i: (i + 1.0) ** -k)
    return value, "accelerated alternating series", max(last, 4 * EPS * value)


def eta_integer_values(k_max: int) -> DirichletSamples:
    """``eta(0), ..., eta(k_max)``, with ``eta(s) = sum_{n>=1} (-1)^(n-1) n^-s``.

    At least three samples are always produced.
    """
    k_max = int(k_max)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    return _eta_table(max(k_max, 2))


@lru_cache(maxsize=16)
def _eta_table(k_max: int) -> DirichletSamples:
    rows = [eta_value(k) for k in range(k_max + 1)]
    return DirichletSamples(np.array([r[0] for r in rows]), tuple(r[1] for r in rows),
                            np.array([r[2] for r in rows]))


# Bernoulli numbers B_2, B_4, ..., B_20
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
              43867 / 798, -174611 / 330)


def zeta_direct(s: complex, n_direct: int = 20, full_output: bool = False):
    """``zeta(s)`` from the direct sum plus an Euler-Maclaurin tail.

    ``sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_j B_2j/(2j)! s(s+1)...(s+2j-2) N^(-s-2j+1)``.
    Valid for ``Re s > -19`` except the pole at 1; the error estimate is the
    size of the first omitted correction. Independent of the Newton engine.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    N = int(n_direct)
    head = [n ** -s for n in range(1, N)]
    value = complex(math.fsum(z.real for z in head), math.fsum(z.imag for z in head))
    value += N ** (1 - s) / (s - 1) + 0.5 * N ** -s
    rising = s
    fact = 2.0
    power = N ** (-s - 1)
    err = 0.0
    for j, B in enumerate(_BERNOULLI, start=1):
        term = B / fact * rising * power
        if j == len(_BERNOULLI):
            err = abs(term)
            break
        value += term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power /= N * N
    err = max(err, 8 * EPS * abs(value))
    value = value.real if s.imag == 0 else value
    if full_output:
        return value, err
    return value


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------

def dirichlet_newton_interpolate(samples: DirichletSamples, s: complex,
                                 policy: TruncationPolicy | None = None,
                                 full_output: bool = False):
    """``g(s)`` from the sample table by the Newton series; exact at the nodes."""
    policy = policy or DIRICHLET_POLICY
    coeffs = newton_coefficients(samples.values, samples.errors)
    res = newton_eval(coeffs, s, policy, full_output=True)
    res.info.setdefault("samples", samples.values.size)
    return finish(res, policy, "dirichlet_newton_interpolate", full_output)


def _samples_for(policy: TruncationPolicy) -> DirichletSamples:
    return eta_integer_values(policy.max_terms - 1)


def _eta_factor(s: complex) -> complex:
    """``1 - 2^(1-s)``, rejecting its zeros."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    factor = 1 - cmath.exp((1 - s) * _LN2)
    if abs(factor) < 1e-12:
        k = round(s.imag * _LN2 / (2 * math.pi))
        raise FactorZero(f"1 - 2^(1-s) vanishes at s = 1 + 2 pi i {k} / ln 2; "
                         "the eta identity cannot recover zeta there")
    return factor


def zeta_via_eta(s: complex, policy: TruncationPolicy | None = None, full_output: bool = False):
    """``zeta(s) = eta(s) / (1 - 2^(1-s))`` with ``eta`` interpolated from its
    integer values."""
    policy = policy or DIRICHLET_POLICY
    factor = _eta_factor(s)
    res = dirichlet_newton_interpolate(_samples_for(policy), s, policy, full_output=True)
    res.value = res.value / factor
    res.tail = res.tail / abs(factor)
    res.info.update({"method": "eta", "factor": factor})
    return finish(res, policy, "zeta_via_eta", full_output)


@lru_cache(maxsize=16)
def _reciprocal_table(k_max: int) -> DirichletSamples:
    vals = [-2.0, 0.0]
    errs = [0.0, 0.0]
    prov = ["closed form", "closed form"]
    for k in range(2, k_max + 1):
        z, e = zeta_direct(k, full_output=True)
        vals.append(1.0 / z)
        errs.append(e / z ** 2)
        prov.append("direct series")
    return DirichletSamples(np.array(vals), tuple(prov), np.array(errs))


def reciprocal_zeta(s: complex, policy: TruncationPolicy | None = None,
                    full_output: bool = False):
    """Experimental: ``1/zeta(s)`` interpolated from ``1/zeta(k)``.

    No convergence region is known for this expansion, so the result always
    carries its partial-sum trajectory (``info["partial_sums"]``) and is
    flagged ``experimental``. Non-convergence is reported, not hidden.
    """
    policy = policy or DIRICHLET_POLICY
    samples = _reciprocal_table(max(policy.max_terms - 1, 2))
    coeffs = newton_coefficients(samples.values, samples.errors)
    res = newton_eval(coeffs, s, policy, full_output=True)
    p = pochhammer_newton_sequence(max(res.terms, 1), s)
    res.info.update({"method": "reciprocal", "experimental": True,
                     "partial_sums": np.cumsum(coeffs.values[:res.terms] * p[:res.terms])})
    return finish(res, policy, "reciprocal_zeta", full_output)


@lru_cache(maxsize=32)
def _shifted_table(k_max: int, eps: float) -> DirichletSamples:
    rows = [zeta_direct(k + 1 + eps, full_output=True) for k in range(k_max + 1)]
    return DirichletSamples(np.array([r[0] for r in rows]), ("direct series",) * (k_max + 1),
                            np.array([r[1] for r in rows]))


def zeta_shifted(s: complex, eps: float, policy: TruncationPolicy | None = None,
                 full_output: bool = False):
    """``zeta(s + 1 + eps)`` interpolated from ``zeta(k + 1 + eps)``, ``eps > 0``."""
    policy = policy or DIRICHLET_POLICY
    eps = float(eps)
    if not eps > 0:
        raise ValueError("eps must be positive")
    samples = _shifted_table(max(policy.max_terms - 1, 2), eps)
    res = dirichlet_newton_interpolate(samples, s, policy, full_output=True)
    res.info.update({"method": "shifted", "eps": eps})
    return finish(res, policy, "zeta_shifted", full_output)


def mellin_interpolate(mellin_samples: DirichletSamples, s: complex,
                       policy: TruncationPolicy | None = None,
                       residue_at_zero: complex | None = None, full_output: bool = False):
    """``M[f](s)`` from ``M[f](0), M[f](1), ...``.

    Interpolates ``g(k) = M[f](k)/Gamma(k)`` and multiplies by ``Gamma(s)``.
    At ``k = 0`` the quotient is taken as 0 (``1/Gamma(0) = 0``) unless
    ``residue_at_zero`` gives the limit explicitly, as is needed when
    ``M[f]`` itself has a pole at 0 (for ``e^-x``, ``g(0) = 1``).
    """
    policy = policy or DIRICHLET_POLICY
    s = complex(s)
    if s.imag == 0 and s.real <= 0 and float(s.real).is_integer():
        raise GammaPole(f"Gamma has a pole at s = {s.real:g}")
    m = mellin_samples.values
    g = np.empty_like(m)
    g[0] = 0.0 if residue_at_zero is None else complex(residue_at_zero)
    k = np.arange(1, m.size)
    g[1:] = m[1:] / gamma(k)
    err = None
    if mellin_samples.errors is not None:
        err = np.concatenate([[0.0], mellin_samples.errors[1:] / gamma(k)])
    res = dirichlet_newton_interpolate(DirichletSamples(g, mellin_samples.provenance, err),
                                       s, policy, full_output=True)
    gs = complex(gamma(s))
    res.value = res.value * gs
    res.tail = res.tail * abs(gs)
    res.info.update({"method": "mellin", "gamma_s": gs})
    return finish(res, policy, "mellin_interpolate", full_output)


__all__ = ["DIRICHLET_POLICY", "DirichletSamples", "SeriesResult", "dirichlet_newton_interpolate",
           "eta_integer_values", "eta_value", "euler_alternating_sum", "mellin_interpolate",
           "reciprocal_zeta", "zeta_direct", "zeta_shifted", "zeta_via_eta"]
