"""Fractional powers of square complex matrices.

Three engines build ``T**alpha`` from integer powers of ``T`` only:

* :func:`newton_matrix_power` -- Newton series, spectrum inside a disk
  ``B(rho, |rho|)`` touching the origin;
* :func:`shannon_matrix_power` -- symmetric sinc series, unitary ``T``;
* :func:`periodic_matrix_power` -- exact finite sum, ``T**N == I``.

:func:`eigen_fractional_power_oracle` is the independent check: it
diagonalizes and takes principal scalar powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import (BranchAmbiguous, CertificateRefused, DomainError,
                     IllConditioned)
from .interp_core import (SHANNON_POLICY, SeriesResult, TruncationPolicy,
                          accumulate_series, finish, periodic_power_weights,
                          shannon_partial_sum)

SPECTRUM_TOL = 1e-9
NEWTON_POLICY = TruncationPolicy(max_terms=200, abs_tol=1e-13, tail_window=3)
SAFETY_RATIO = 0.8


def as_matrix(T) -> np.ndarray:
    """Validate and convert to a square, finite complex array."""
    A = np.array(T, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


# ---------------------------------------------------------------------------
# spectral certificates
# ---------------------------------------------------------------------------

@dataclass
class SpectralCertificate:
    kind: str
    evidence: str
    eigenvalues: np.ndarray
    center: complex | None = None
    radius: float | None = None
    order: int | None = None
    tangent_center: complex | None = None
    tangent_ratio: float | None = None
    boundary: bool = False
    extra: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {"kind": self.kind, "evidence": self.evidence, "boundary": self.boundary}
        if self.center is not None:
            out["center"] = [self.center.real, self.center.imag]
            out["radius"] = self.radius
        if self.order is not None:
            out["order"] = self.order
        if self.tangent_center is not None:
            out["tangent_center"] = [self.tangent_center.real, self.tangent_center.imag]
            out["tangent_ratio"] = self.tangent_ratio
        out.update(self.extra)
        return out


def _ratio(eigs: np.ndarray, rho: complex) -> float:
    return float(np.max(np.abs(eigs / rho - 1))) if eigs.size else 0.0


def best_tangent_disk(eigs, zero_tol: float = SPECTRUM_TOL) -> tuple[complex, float]:
    """Search the disks ``B(z, |z|)`` for the one that holds ``eigs`` most tightly.

    Returns ``z`` and ``max |lambda / z - 1|`` over the nonzero eigenvalues
    (zero always sits on the boundary of such a disk and is skipped). With
    ``w = 1/z`` the objective ``max |lambda w - 1|`` is convex, so it is
    minimized directly in epigraph form, from a few starting points. When
    the optimum runs off to infinity only a half-plane holds the spectrum,
    with eigenvalues on its edge; the ratio is then reported as ``inf``.
    """
    eigs = np.asarray(eigs, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(eigs)))) if eigs.size else 1.0
    nz = eigs[np.abs(eigs) > zero_tol * scale]
    if nz.size == 0:
        return 1.0 + 0j, 0.0
    big = float(np.max(np.abs(nz)))

    def dist(x):
        return np.abs(nz * complex(x[0], x[1]) - 1)

    starts = list(1 / nz)
    if abs(nz.mean()) > 1e-6 * big:
        starts.insert(0, 1 / nz.mean())
    cons = {"type": "ineq", "fun": lambda x: x[2] - dist(x)}
    best = None
    for w0 in starts:
        x0 = [w0.real, w0.imag, float(np.max(dist([w0.real, w0.imag])))]
        res = minimize(lambda x: x[2], x0, jac=lambda x: np.array([0.0, 0.0, 1.0]),
                       constraints=[cons], method="SLSQP",
                       options={"ftol": 1e-15, "maxiter": 500})
        for cand in (res.x[:2], x0[:2]):
            r = float(np.max(dist(cand)))
            if best is None or r < best[0]:
                best = (r, complex(cand[0], cand[1]))
    ratio, w = best
    if ratio >= 1 - SPECTRUM_TOL or abs(w) * big < 1e-8:
        return (1 / w if w != 0 else complex(math.inf, 0)), math.inf
    return 1 / w, ratio


def certify_spectrum(T, kind: str = "disk", *, center: complex | None = None,
                     radius: float | None = None, order: int | None = None,
                     tol: float = SPECTRUM_TOL) -> SpectralCertificate:
    """Check that the spectrum of ``T`` lies in the requested region.

    ``kind`` is ``"disk"`` (closed disk ``center``/``radius``; if neither is
    given, the tightest tangent disk ``B(z, |z|)`` must hold the nonzero
    spectrum with ratio <= 1), ``"unit_circle"`` (``T`` unitary) or
    ``"finite_order"`` (``T**order == I``).
    """
    A = as_matrix(T)
    eigs = np.linalg.eigvals(A)
    n = A.shape[0]
    if kind == "unit_circle":
        defect = float(np.linalg.norm(A.conj().T @ A - np.eye(n), "fro"))
        if defect > tol:
            raise CertificateRefused(f"not unitary: ||T*T - I||_F = {defect:.3g}")
        return SpectralCertificate("unit_circle", f"||T*T - I||_F = {defect:.3g}", eigs,
                                   boundary=bool(np.any(np.abs(eigs + 1) <= 1e-8)))
    if kind == "finite_order":
        if order is None or int(order) != order or order < 1:
            raise ValueError("finite_order certificate needs a positive integer order")
        defect = float(np.linalg.norm(np.linalg.matrix_power(A, int(order)) - np.eye(n), "fro"))
        if defect > tol:
            raise CertificateRefused(f"T^{order} != I: ||T^N - I||_F = {defect:.3g}")
        return SpectralCertificate("finite_order", f"||T^{order} - I||_F = {defect:.3g}", eigs,
                                   order=int(order),
                                   boundary=bool(np.any(np.abs(eigs + 1) <= 1e-8)))
    if kind != "disk":
        raise ValueError(f"unknown certificate kind {kind!r}")

    z, ratio = best_tangent_disk(eigs)
    if center is None and radius is None:
        if ratio > 1 + tol:
            bad = eigs[int(np.argmax(np.abs(eigs / z - 1)))]
            raise CertificateRefused(
                f"no disk B(z, |z|) holds the spectrum (best ratio {ratio:.4g})", offending=bad)
        center, radius = z, abs(z)
    center = complex(center)
    radius = float(radius)
    dist = np.abs(eigs - center)
    if np.any(dist > radius * (1 + tol) + tol):
        bad = eigs[int(np.argmax(dist))]
        raise CertificateRefused(
            f"eigenvalue {bad:.6g} outside closed disk B({center:.4g}, {radius:.4g})", offending=bad)
    boundary = bool(np.any(dist >= radius * (1 - tol)))
    return SpectralCertificate("disk", "dense eigensolve", eigs, center=center, radius=radius,
                               tangent_center=z, tangent_ratio=ratio, boundary=boundary)


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

def _choose_rho(eigs: np.ndarray, rho) -> tuple[complex, float, bool]:
    """Return (rho, ratio, boundary) for the Newton engine."""
    scale = max(1.0, float(np.max(np.abs(eigs))))
    has_zero = bool(np.any(np.abs(eigs) <= SPECTRUM_TOL * scale))
    if isinstance(rho, str):
        if rho != "auto":
            raise ValueError("rho must be a number or 'auto'")
        rho, ratio = best_tangent_disk(eigs)
    else:
        rho = complex(rho)
        if rho == 0:
            raise ValueError("rho must be nonzero")
        nz = eigs[np.abs(eigs) > SPECTRUM_TOL * scale]
        ratio = _ratio(nz, rho)
    if ratio > 1 + SPECTRUM_TOL:
        bad = eigs[int(np.argmax(np.abs(eigs / rho - 1)))]
        raise CertificateRefused(
            f"spectrum of T/rho not in the closed disk B(1, 1) (ratio {ratio:.4g})", offending=bad)
    boundary = has_zero or ratio >= 1 - SPECTRUM_TOL
    return rho, ratio, boundary


def newton_matrix_power(T, alpha: complex, rho="auto", policy: TruncationPolicy | None = None,
                        full_output: bool = False):
    """``T**alpha`` by the Newton series ``sum_n [sum_k P_k(n) rho^(alpha-k) T^k] P_n(alpha)``.

    The inner sums are the Newton coefficients of ``k -> rho^(alpha-k) T^k``;
    by the binomial theorem they equal ``rho^alpha (I - T/rho)^n``, which is
    what gets accumulated (one matrix product per term, no cancellation).

    ``rho="auto"`` picks the tangent disk that holds the spectrum most
    tightly; the achieved ``max |lambda/rho - 1|`` is reported as ``ratio``
    (below 0.8 gives a geometric tail). A spectrum touching the disk boundary,
    including a zero eigenvalue, needs ``Re(alpha) > 0``.
    """
    policy = policy or NEWTON_POLICY
    A = as_matrix(T)
    n = A.shape[0]
    eigs = np.linalg.eigvals(A)
    rho, ratio, boundary = _choose_rho(eigs, rho)
    alpha = complex(alpha) if np.iscomplexobj(alpha) else float(alpha)
    if boundary and not complex(alpha).real > 0:
        raise DomainError("spectrum touches the disk boundary: need Re(alpha) > 0")
    B = np.eye(n) - A / rho
    scale = rho ** alpha
    m = None
    if complex(alpha).imag == 0 and complex(alpha).real >= 0 and float(complex(alpha).real).is_integer():
        m = int(complex(alpha).real)

    def terms():
        P = np.eye(n, dtype=complex)
        p = 1.0 + 0j
        k = 0
        while m is None or k <= m:
            yield scale * p * P
            p *= (k - alpha) / (k + 1)
            P = P @ B
            k += 1

    res = accumulate_series(terms(), policy if m is None else
                            TruncationPolicy(max_terms=m + 1, abs_tol=0.0, tail_window=m + 2))
    info = {"method": "newton", "rho": [rho.real, rho.imag], "ratio": ratio,
            "boundary": boundary, "margin_met": ratio <= SAFETY_RATIO}
    arg_ok = bool(np.all(np.abs(np.angle(rho) + np.angle(eigs[np.abs(eigs) > 0] / rho)) < np.pi))
    info["principal_branch"] = arg_ok
    res.info.update(info)
    return finish(res, policy, "newton_matrix_power", full_output)


class _PowerCache:
    """Successive powers U^n and U^-n for increasing |n|, using U^-1 = U*."""

    def __init__(self, U, inverse):
        self.U, self.V = U, inverse
        self.pos = [np.eye(U.shape[0], dtype=complex)]
        self.neg = [self.pos[0]]

    def __call__(self, n):
        seq, step = (self.pos, self.U) if n >= 0 else (self.neg, self.V)
        k = abs(n)
        while len(seq) <= k:
            seq.append(seq[-1] @ step)
        if k > 2:
            seq[k - 2] = None
        return seq[k]


def shannon_matrix_power(U, alpha: float, policy: TruncationPolicy | None = None,
                         full_output: bool = False):
    """``U**alpha`` for unitary ``U`` by symmetric partial sums of
    ``sum_n sinc(alpha - n) U^n``.

    On eigenvectors with eigenvalue ``e^{i theta}``, ``theta`` in (-pi, pi),
    the limit multiplies by ``e^{i alpha theta}``; on the eigenspace of -1 it
    multiplies by ``cos(pi alpha)``, so the result is not unitary there.
    """
    policy = policy or SHANNON_POLICY
    A = as_matrix(U)
    cert = certify_spectrum(A, "unit_circle")
    alpha = float(alpha)
    if alpha.is_integer():
        value = (np.linalg.matrix_power(A, int(alpha)) if alpha >= 0
                 else np.linalg.matrix_power(A.conj().T, int(-alpha)))
        res = SeriesResult(value, 1, 0.0, True, {"exact_integer": True})
    else:
        res = shannon_partial_sum(alpha, _PowerCache(A, A.conj().T), policy)
    res.info.update({"method": "shannon", "certificate": cert.summary(),
                     "minus_one_in_spectrum": cert.boundary})
    return finish(res, policy, "shannon_matrix_power", full_output)


def periodic_matrix_power(T, N: int, alpha: float, full_output: bool = False):
    """``T**alpha`` for ``T**N == I`` as the exact finite sum ``sum_{n<N} w_n(alpha) T^n``."""
    A = as_matrix(T)
    cert = certify_spectrum(A, "finite_order", order=N)
    w = periodic_power_weights(N, alpha)
    powers = [np.eye(A.shape[0], dtype=complex)]
    for _ in range(1, int(N)):
        powers.append(powers[-1] @ A)
    value = w.apply(powers)
    res = SeriesResult(value, int(N), 0.0, True,
                       {"method": "periodic", "weights": w.weights.tolist(),
                        "certificate": cert.summary(),
                        "minus_one_in_spectrum": cert.boundary and N % 2 == 0})
    return res if full_output else value


def eigen_fractional_power_oracle(T, alpha: complex, on_negative_axis: str = "raise",
                                  max_condition: float = 1e8) -> np.ndarray:
    """``V diag(lambda_i**alpha) V^-1`` with principal scalar powers.

    Eigenvalues within 1e-12 of the closed negative real axis are ambiguous;
    ``on_negative_axis`` selects ``"raise"`` (default), ``"principal"``
    (argument +pi) or ``"cos"`` (multiplier ``|lambda|^alpha cos(pi alpha)``,
    the limit of the sinc series).
    """
    A = as_matrix(T)
    lam, V = np.linalg.eig(A)
    cond = np.linalg.cond(V)
    if not cond < max_condition:
        raise IllConditioned(f"eigenvector matrix condition number {cond:.3g}")
    alpha = complex(alpha)
    out = np.empty_like(lam)
    for i, l in enumerate(lam):
        l = complex(l.real, l.imag + 0.0)
        if abs(l) <= 1e-12:
            if alpha.real <= 0:
                raise BranchAmbiguous("zero eigenvalue with Re(alpha) <= 0")
            out[i] = 0
        elif abs(l.imag) <= 1e-12 and l.real < 0:
            if on_negative_axis == "raise":
                raise BranchAmbiguous(f"eigenvalue {l:.6g} on the negative real axis")
            r = abs(l)
            if on_negative_axis == "principal":
                out[i] = np.exp(alpha * (np.log(r) + 1j * np.pi))
            elif on_negative_axis == "cos":
                out[i] = r ** alpha * np.cos(np.pi * alpha)
            else:
                raise ValueError(f"unknown on_negative_axis {on_negative_axis!r}")
        else:
            out[i] = l ** alpha
    value = (V * out) @ np.linalg.inv(V)
    return value
