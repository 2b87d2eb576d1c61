"""Fractional Fourier transforms and fractional translations.

The alternate transform interpolates the four integer powers of the unitary
DFT with the period-4 sinc weights, so it is an exact finite combination of
``f``, ``F f``, ``P f`` and ``F P f``. The literature transform is the usual
chirp-multiply / chirp-convolve / chirp-multiply discretization of the
rotation kernel. The last part of the module samples translations: the
sinc-interpolated power of the unit shift, and its refinement with step
``1/k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve, resample

from .errors import DegenerateAngle, GridMismatch
from .interp_core import PeriodicWeights, periodic_power_weights, sinc

SIN_THRESHOLD = 1e-6
MINUS_ONE_TOL = 1e-8


@dataclass(frozen=True)
class Signal:
    """Samples on the centered grid ``x_j = (j - M//2) * step``."""

    samples: np.ndarray
    sample_rate: float = 1.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        v = np.asarray(self.samples, dtype=complex)
        if v.ndim != 1 or v.size < 4:
            raise ValueError("a signal needs at least 4 samples")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        if not self.sample_rate > 0:
            raise ValueError("grid step must be positive")
        object.__setattr__(self, "samples", v)

    @property
    def M(self) -> int:
        return self.samples.size

    @property
    def step(self) -> float:
        return float(self.sample_rate)

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.M) - self.M // 2) * self.step

    def with_samples(self, samples, **meta) -> "Signal":
        return Signal(samples, self.sample_rate, meta)

    def norm(self) -> float:
        return float(np.linalg.norm(self.samples))

    @classmethod
    def from_function(cls, func, M: int, step: float | None = None) -> "Signal":
        """Sample ``func`` on the centered grid; the default step ``1/sqrt(M)``
        makes the DFT a discretization of the continuous Fourier transform."""
        step = 1 / math.sqrt(M) if step is None else float(step)
        x = (np.arange(M) - M // 2) * step
        return cls(np.asarray(func(x), dtype=complex) * np.ones(M), step)


def box(M: int, lo: float = -0.5, hi: float = 0.5, step: float | None = None) -> Signal:
    """Indicator of ``[lo, hi]``."""
    return Signal.from_function(lambda x: ((x >= lo) & (x <= hi)).astype(float), M, step)


def gaussian(M: int, step: float | None = None, width: float = 1.0) -> Signal:
    """``exp(-pi (x/width)^2)``, a fixed point of the Fourier transform when width = 1."""
    return Signal.from_function(lambda x: np.exp(-np.pi * (x / width) ** 2), M, step)


# ---------------------------------------------------------------------------
# DFT on the centered grid
# ---------------------------------------------------------------------------

def dft(v: np.ndarray) -> np.ndarray:
    """Unitary DFT with the zero index at position ``M//2``."""
    return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(v), norm="ortho"))


def idft(v: np.ndarray) -> np.ndarray:
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(v), norm="ortho"))


def parity(v: np.ndarray) -> np.ndarray:
    """``x -> -x`` modulo M, which equals the square of :func:`dft` exactly."""
    u = np.fft.ifftshift(v)
    return np.fft.fftshift(np.roll(u[::-1], 1))


def dft_power(v: np.ndarray, n: int) -> np.ndarray:
    n %= 4
    if n == 0:
        return np.array(v, dtype=complex)
    if n == 1:
        return dft(v)
    if n == 2:
        return parity(v)
    return idft(v)


def dft_eigenprojection(v: np.ndarray, lam: complex) -> np.ndarray:
    """Orthogonal projection onto the eigenspace ``F u = lam u``, ``lam^4 = 1``:
    ``(1/4) sum_k lam^-k F^k``."""
    lam = complex(lam)
    if abs(lam ** 4 - 1) > 1e-12:
        raise ValueError("DFT eigenvalues are the fourth roots of unity")
    lam = complex(round(lam.real), round(lam.imag))
    return sum(lam ** -k * dft_power(v, k) for k in range(4)) / 4


def minus_one_projector(v: np.ndarray) -> np.ndarray:
    """``(I - F + F^2 - F^3)/4``: the component on which the alternate transform
    acts by ``cos(pi alpha)`` instead of a unimodular factor."""
    return dft_eigenprojection(v, -1)


# ---------------------------------------------------------------------------
# alternate fractional Fourier transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrftWeights:
    alpha: float
    w: np.ndarray

    def multiplier(self, lam: complex) -> complex:
        return complex(np.sum(self.w * complex(lam) ** np.arange(4)))


def alt_frft_weights(alpha: float) -> FrftWeights:
    """``sin(pi a)/4 [cot(pi a/4), -cot(pi (a-1)/4), -tan(pi a/4), tan(pi (a-1)/4)]``,
    with the removable singularities at integer ``a`` filled in."""
    pw: PeriodicWeights = periodic_power_weights(4, alpha)
    return FrftWeights(float(alpha), pw.weights)


def alt_frft(f: Signal, alpha: float) -> Signal:
    """``w0 f + w1 F f + w2 P f + w3 F P f``.

    Terms with zero weight are skipped, so integer orders return the exact
    integer power. The result meta records the fraction of ``f`` lying in the
    DFT's -1 eigenspace; there the transform multiplies by ``cos(pi alpha)``,
    which breaks unitarity and additivity.
    """
    weights = alt_frft_weights(alpha)
    v = f.samples
    out = None
    for n, w in enumerate(weights.w):
        if w == 0:
            continue
        term = dft_power(v, n)
        out = w * term if out is None else out + w * term
    if out is None:
        out = np.zeros_like(v)
    fn = np.linalg.norm(v)
    frac = float(np.linalg.norm(minus_one_projector(v)) / fn) if fn > 0 else 0.0
    meta = {"method": "alt", "alpha": float(alpha), "weights": weights.w.tolist(),
            "minus_one_fraction": frac}
    if frac > MINUS_ONE_TOL and not float(alpha).is_integer():
        meta["warning"] = (f"{frac:.3g} of the input lies in the DFT -1 eigenspace, scaled by "
                           f"cos(pi alpha) = {math.cos(math.pi * alpha):.6g}; the transform "
                           "is not unitary or additive on this component")
    return f.with_samples(out, **meta)


# ---------------------------------------------------------------------------
# chirp-based literature transform
# ---------------------------------------------------------------------------

def _check_dft_grid(f: Signal):
    if abs(f.step * math.sqrt(f.M) - 1) > 1e-9:
        raise GridMismatch(f"the chirp transform needs grid step 1/sqrt(M) = {1 / math.sqrt(f.M):.6g}, "
                           f"got {f.step:.6g}")


def _chirp_core(v: np.ndarray, phi: float, dx: float) -> np.ndarray:
    """Rotation by ``phi`` with |sin phi| not small, on a grid of step ``dx``."""
    M = v.size
    g = resample(v, 2 * M)  # band-limited interpolation to step dx/2
    d = dx / 2
    idx = np.arange(2 * M) - M
    x = idx * d
    t = math.tan(phi / 2)
    csc = 1 / math.sin(phi)
    g = g * np.exp(-1j * np.pi * t * x ** 2)
    k = np.arange(-(2 * M - 1), 2 * M) * d
    kernel = np.exp(1j * np.pi * csc * k ** 2)
    conv = fftconvolve(g, kernel)[2 * M - 1: 4 * M - 1]
    amp = np.sqrt(1 - 1j / math.tan(phi))
    out = amp * d * np.exp(-1j * np.pi * t * x ** 2) * conv
    return out[::2]


def literature_frft(f: Signal, phi: float, exact_limits: bool = True) -> Signal:
    """Fractional Fourier transform by rotation angle ``phi``.

    Kernel ``sqrt(1 - i cot phi) exp(i pi (cot phi (x^2 + u^2) - 2 csc phi x u))``,
    realized as chirp multiplication, chirp convolution (FFT, on a 2x
    oversampled grid) and chirp multiplication. Angles are first reduced so
    the chirp step always runs with ``phi`` in ``[pi/4, 3pi/4]`` modulo pi,
    using exact DFT powers for the rest. Within ``SIN_THRESHOLD`` of a
    multiple of pi the kernel degenerates; then the identity or parity is
    returned when ``exact_limits`` is set and ``DegenerateAngle`` is raised
    otherwise. The grid step must be ``1/sqrt(M)``.
    """
    _check_dft_grid(f)
    phi = float(phi)
    v = f.samples
    meta = {"method": "chirp", "phi": phi}
    if abs(math.sin(phi)) < SIN_THRESHOLD:
        if not exact_limits:
            raise DegenerateAngle("sin(phi) is too small for the chirp kernel; use the identity "
                                  "(phi = 0 mod 2 pi) or parity (phi = pi mod 2 pi) directly")
        n = int(round(phi / (math.pi / 2))) % 4
        return f.with_samples(dft_power(v, n), exact_limit=True, **meta)
    a = (2 * phi / math.pi) % 4.0
    if a < 0.5 or a > 3.5:
        pre, core = -1, 1.0 + (a if a < 0.5 else a - 4)
    elif 1.5 < a < 2.5:
        pre, core = 1, a - 1
    else:
        pre, core = 0, a
    out = _chirp_core(v, core * math.pi / 2, f.step)
    if pre:
        out = dft_power(out, pre)
    return f.with_samples(out, core_order=core, **meta)


# ---------------------------------------------------------------------------
# translations
# ---------------------------------------------------------------------------

def _interval_indicator(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return ((x >= lo) & (x <= hi)).astype(float)


def translation_counterexample(t: float, grid: int = 64, n_max: int = 64,
                               extent: float = 8.0) -> dict:
    """Sample ``sum_{|n|<=n_max} sinc(t - n) chi_[n, n+1/2]`` on ``[-extent, extent]``
    with ``grid`` points per unit.

    Every integer shift of ``chi_[0,1/2]`` vanishes on ``(1/2, 1)``, so the
    interpolated power does too, while the true shift by ``t = 1/2`` equals 1
    there.
    """
    grid = int(grid)
    if grid < 1:
        raise ValueError("grid must be a positive integer")
    x = np.arange(-extent * grid, extent * grid + 1) / grid
    n = np.arange(-n_max, n_max + 1)
    coef = sinc(t - n)
    values = np.zeros_like(x)
    for c, k in zip(coef, n):
        if c != 0:
            values += c * _interval_indicator(x, k, k + 0.5)
    true_shift = _interval_indicator(x, t, t + 0.5)
    inside = (x > 0.5) & (x < 1)
    h = 1.0 / grid
    return {
        "t": float(t), "k": 1, "grid": grid,
        "max_on_interval": float(np.max(np.abs(values[inside]))) if inside.any() else 0.0,
        "true_shift_max_on_interval": float(np.max(true_shift[inside])) if inside.any() else 0.0,
        "l2_error": float(math.sqrt(h * np.sum((values - true_shift) ** 2))),
        "x": x, "values": values, "true_shift": true_shift,
    }


def _shift_samples(v: np.ndarray, m: int) -> np.ndarray:
    """``out[j] = v[j - m]`` with zero fill."""
    out = np.zeros_like(v)
    if m >= 0:
        out[m:] = v[: v.size - m]
    else:
        out[:m] = v[-m:]
    return out


def refined_translation_power(f: Signal, t: float, k: int) -> Signal:
    """``sum_n sinc(k t - n) T_{n/k} f``: the ``kt``-th power of the shift by ``1/k``.

    ``T_s f(x) = f(x - s)``; samples shifted off the grid are dropped and
    zeros enter from the other side. The step ``1/k`` must be a whole number
    of grid steps.
    """
    k = int(k)
    if k < 1:
        raise ValueError("k must be a positive integer")
    ratio = 1.0 / (k * f.step)
    m = int(round(ratio))
    if m < 1 or abs(ratio - m) > 1e-9 * max(1.0, ratio):
        raise GridMismatch(f"shift 1/{k} is not a whole number of grid steps ({ratio:.6g})")
    v = f.samples
    n_max = (f.M - 1) // m
    n = np.arange(-n_max, n_max + 1)
    coef = sinc(k * float(t) - n)
    out = np.zeros_like(v)
    used = 0
    for c, j in zip(coef, n):
        if c != 0:
            out += c * _shift_samples(v, int(j) * m)
            used += 1
    return f.with_samples(out, method="refined_translation", t=float(t), k=k, terms=used)


def l2_distance(a: np.ndarray, b: np.ndarray, step: float = 1.0) -> float:
    return float(math.sqrt(step * np.sum(np.abs(np.asarray(a) - np.asarray(b)) ** 2)))
