"""Reference computations that do not go through the package's engines.

mpmath supplies high-precision special functions; everything else here is
brute force (difference tables, dense DFT matrices, finite-difference
derivatives, series summed term by term).
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np

mp.mp.dps = 30

# Values frozen from closed forms, used as expected outputs.
FROZEN = {
    "sqrt_1p5": 1.224744871391589,
    "eta_1": 0.6931471805599453,
    "eta_2": 0.8224670334241132,
    "zeta_2": 1.6449340668482264,
    "zeta_3": 1.2020569031595942,
    "zeta_1p5": 2.612375348685488,
    "recip_zeta_2": 0.6079271018540267,
    "recip_zeta_2p5": 0.7454412962887770,
    "gamma_half": 1.7724538509055159,
    "alt_weights_half": (0.6035533905932737, 0.6035533905932737,
                         -0.10355339059327376, -0.10355339059327376),
    "two_over_pi": 0.6366197723675814,
}


def principal_power(x, alpha) -> complex:
    return complex(mp.power(mp.mpc(x), mp.mpc(alpha)))


def difference_table_coefficients(f, n_max: int) -> list[complex]:
    """``(-1)^n Delta^n f(0)`` from an explicit forward-difference table."""
    row = [mp.mpc(v) for v in f]
    out = []
    for n in range(n_max + 1):
        out.append(complex((-1) ** n * row[0]))
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def newton_partial_sum(samples, s, terms: int) -> complex:
    """``sum_{n<terms} [sum_k P_k(n) g(k)] P_n(s)`` at 30 digits."""
    c = difference_table_coefficients(samples, terms - 1)
    total = mp.mpc(0)
    p = mp.mpc(1)
    for n in range(terms):
        total += c[n] * p
        p *= (n - mp.mpf(s)) / (n + 1)
    return complex(total)


def zeta_ref(s) -> complex:
    return complex(mp.zeta(s))


def eta_ref(s) -> complex:
    return complex(mp.altzeta(s))


def gamma_ref(s) -> complex:
    return complex(mp.gamma(s))


def rl_closed_form(name: str, alpha: float, x: np.ndarray) -> np.ndarray:
    """Riemann-Liouville integral of order ``alpha`` from 0 for test functions."""
    out = np.empty(x.size)
    for i, xi in enumerate(x):
        xi = mp.mpf(float(xi))
        a = mp.mpf(alpha)
        if name == "one":
            v = xi ** a / mp.gamma(a + 1)
        elif name == "x":
            v = xi ** (a + 1) / mp.gamma(a + 2)
        elif name == "exp":
            v = mp.nsum(lambda k: xi ** (k + a) / mp.gamma(k + a + 1), [0, mp.inf])
        elif name == "sinpi":
            v = mp.nsum(lambda k: (-1) ** k * mp.pi ** (2 * k + 1) * xi ** (2 * k + 1 + a)
                        / mp.gamma(2 * k + 2 + a), [0, mp.inf])
        else:
            raise ValueError(name)
        out[i] = float(v)
    return out


def fd6_derivative(v: np.ndarray, h: float) -> np.ndarray:
    """Sixth-order centred first derivative on a periodic array."""
    c = {1: 3 / 4, 2: -3 / 20, 3: 1 / 60}
    out = np.zeros_like(v)
    for k, w in c.items():
        out += w * (np.roll(v, -k) - np.roll(v, k))
    return out / h


def dense_centred_dft(M: int) -> np.ndarray:
    """Matrix of the unitary DFT indexed by ``j - M//2``."""
    n = np.arange(M) - M // 2
    return np.exp(-2j * np.pi * np.outer(n, n) / M) / math.sqrt(M)


def random_normal_matrix(rng, n: int = 4, center: complex = 1.0, radius: float = 0.8) -> np.ndarray:
    """``Q diag(lam) Q*`` with eigenvalues uniform in the disk B(center, radius)."""
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(-np.pi, np.pi, n)
    lam = center + r * np.exp(1j * th)
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, _ = np.linalg.qr(Z)
    return Q @ np.diag(lam) @ Q.conj().T


def random_unitary(rng, n: int = 4, max_angle: float = 0.9 * np.pi) -> np.ndarray:
    th = rng.uniform(-max_angle, max_angle, n)
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, _ = np.linalg.qr(Z)
    return Q @ np.diag(np.exp(1j * th)) @ Q.conj().T


def eig_power(A: np.ndarray, alpha) -> np.ndarray:
    """Principal power by diagonalization with mpmath scalar powers."""
    w, V = np.linalg.eig(A)
    return V @ np.diag([principal_power(l, alpha) for l in w]) @ np.linalg.inv(V)
