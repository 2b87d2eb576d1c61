"""Command-line front end.

Every subcommand reads its inputs, runs one pipeline and writes the result
with a provenance block (method, terms used, tail estimate, certificate).
Exit codes: 0 ok, 2 parse error, 3 certificate refused, 4 not converged
(only with ``--strict``), 5 domain error.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dirichlet_interp import (DIRICHLET_POLICY, DirichletSamples, mellin_interpolate,
                               reciprocal_zeta, zeta_shifted, zeta_via_eta)
from .errors import FracterpError, NotConverged, ParseError
from .frac_calculus import (FRACINT_POLICY, SampledSignal, frac_derivative_fourier_series,
                            frac_derivative_fourier_transform, frac_derivative_trig,
                            newton_fractional_integral, riemann_liouville)
from .frfrt import (Signal, alt_frft, gaussian, literature_frft, refined_translation_power,
                    translation_counterexample)
from .interp_core import SHANNON_POLICY, TruncationPolicy
from .io import (long_form_csv, parse_complex, read_matrix, read_samples, read_signal,
                 signal_to_csv, to_json, uniform_step, write_matrix, write_text)
from .operator_powers import (NEWTON_POLICY, certify_spectrum, eigen_fractional_power_oracle,
                              newton_matrix_power, periodic_matrix_power, shannon_matrix_power)

log = logging.getLogger("fracterp")

SUBCOMMANDS = ("matpow", "fracint", "fracderiv", "zeta", "mellin", "frft", "demo")


@dataclass
class RunConfig:
    """Validated command-line parameters."""

    subcommand: str
    params: dict = field(default_factory=dict)
    input: str | None = None
    output: str | None = None
    fmt: str | None = None
    terms: int | None = None
    tol: float | None = None
    strict: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ParseError(f"unknown subcommand {self.subcommand!r}")
        if self.terms is not None and self.terms < 1:
            raise ParseError("--terms must be positive")
        if self.tol is not None and not self.tol >= 0:
            raise ParseError("--tol must be nonnegative")

    def policy(self, default: TruncationPolicy) -> TruncationPolicy:
        changes = {"strict": self.strict}
        if self.terms is not None:
            changes["max_terms"] = self.terms
        if self.tol is not None:
            changes["abs_tol"] = self.tol
        return default.replace(**changes)


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _real_arg(text):
    z = _complex_arg(text)
    if z.imag != 0:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}")
    return z.real


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracterp",
                                description="Fractional powers of operators by interpolation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, help="maximum number of series terms")
    common.add_argument("--tol", type=float, help="absolute tolerance on the series tail")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"))
    common.add_argument("--strict", action="store_true",
                        help="exit with code 4 when a series does not converge")
    sub = p.add_subparsers(dest="subcommand", required=True)

    m = sub.add_parser("matpow", parents=[common], help="fractional power of a matrix")
    m.add_argument("--input", required=True, help="matrix JSON")
    m.add_argument("--alpha", type=_complex_arg, required=True)
    m.add_argument("--method", choices=("newton", "shannon", "periodic", "eigen"), default="newton")
    m.add_argument("--rho", default="auto", help="Newton disk centre: 'auto' or re[,im]")
    m.add_argument("--period", type=int, help="N with T^N = I (periodic method)")

    fi = sub.add_parser("fracint", parents=[common], help="fractional integral of a sampled signal")
    fi.add_argument("--input", required=True, help="signal CSV on a uniform grid")
    fi.add_argument("--alpha", type=_complex_arg, required=True)
    fi.add_argument("--method", choices=("newton", "rl"), default="newton")

    fd = sub.add_parser("fracderiv", parents=[common], help="fractional derivative")
    fd.add_argument("--input", help="signal CSV (one period for fourier-series)")
    fd.add_argument("--alpha", type=_real_arg, required=True)
    fd.add_argument("--method", choices=("fourier-series", "fft", "trig"), default="fourier-series")
    fd.add_argument("--lam", type=_real_arg, default=1.0, help="frequency for --method trig")
    fd.add_argument("--kind", choices=("sin", "cos"), default="sin")
    fd.add_argument("--points", type=int, default=257, help="grid size on [0, 2 pi] for trig")

    z = sub.add_parser("zeta", parents=[common], help="Riemann zeta by Newton interpolation")
    z.add_argument("--s", type=_complex_arg, required=True)
    z.add_argument("--method", choices=("eta", "shifted", "reciprocal"), default="eta")
    z.add_argument("--eps", type=_real_arg, default=0.5, help="shift for --method shifted")

    me = sub.add_parser("mellin", parents=[common], help="Mellin transform from integer samples")
    me.add_argument("--input", required=True, help="CSV k,re,im,provenance of M[f](k)")
    me.add_argument("--s", type=_complex_arg, required=True)
    me.add_argument("--residue-at-zero", type=_complex_arg,
                    help="limit of M[f](s)/Gamma(s) at s = 0 (default 0)")

    fr = sub.add_parser("frft", parents=[common], help="fractional Fourier transform")
    fr.add_argument("--input", required=True, help="signal CSV on a centred grid")
    fr.add_argument("--alpha", type=_real_arg, required=True,
                    help="order; the chirp method rotates by alpha pi/2")
    fr.add_argument("--method", choices=("alt", "chirp"), default="alt")

    de = sub.add_parser("demo", parents=[common], help="translation demonstrations")
    de.add_argument("which", choices=("translation", "refine"))
    de.add_argument("--t", type=_real_arg, default=0.5)
    de.add_argument("--grid", type=int, default=64, help="grid points per unit length")
    de.add_argument("--k", type=int, nargs="+", default=[1, 2, 4, 8])
    de.add_argument("--input", help="signal CSV for refine (default: Gaussian on [-8, 8))")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(ns).items()
              if k not in ("subcommand", "input", "output", "fmt", "terms", "tol", "strict")}
    return RunConfig(ns.subcommand, params, getattr(ns, "input", None), ns.output, ns.fmt,
                     ns.terms, ns.tol, ns.strict)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _provenance(res, **extra) -> dict:
    d = {"terms": res.terms, "tail": float(res.tail), "converged": bool(res.converged)}
    d.update({k: v for k, v in res.info.items() if k not in ("partial_sums",)})
    d.update(extra)
    return d


def _emit_scalar(cfg: RunConfig, value: complex, prov: dict):
    value = complex(value)
    if cfg.fmt == "csv":
        text = "re,im\n" + f"{value.real!r},{value.imag!r}\n"
    else:
        text = to_json({"value": [value.real, value.imag], "provenance": prov}) + "\n"
    write_text(cfg.output, text)


def _emit_signal(cfg: RunConfig, x, values, prov: dict):
    if cfg.fmt == "json":
        text = to_json({"x": list(map(float, x)),
                        "values": [[v.real, v.imag] for v in np.asarray(values, dtype=complex)],
                        "provenance": prov}) + "\n"
    else:
        text = signal_to_csv(x, values, prov)
    write_text(cfg.output, text)


def _load_sampled(path) -> SampledSignal:
    x, v, _ = read_signal(path)
    uniform_step(x)
    return SampledSignal(float(x[0]), float(x[-1]), v)


def _load_centred(path) -> Signal:
    x, v, _ = read_signal(path)
    h = uniform_step(x)
    M = x.size
    if abs(x[M // 2]) > 1e-9 * max(1.0, h * M):
        raise ParseError("signal grid must be centred: x[M//2] = 0")
    return Signal(v, h)


def _check(res, what):
    if not res.converged:
        log.warning("%s did not converge: tail %.3g after %d terms", what, res.tail, res.terms)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _run_matpow(cfg: RunConfig):
    p = cfg.params
    A = read_matrix(cfg.input)
    alpha = p["alpha"]
    alpha = alpha.real if alpha.imag == 0 else alpha
    method = p["method"]
    if method == "newton":
        rho = p["rho"] if p["rho"] == "auto" else parse_complex(p["rho"])
        cert = certify_spectrum(A, "disk") if rho == "auto" else \
            certify_spectrum(A, "disk", center=rho, radius=abs(rho))
        res = newton_matrix_power(A, alpha, rho=rho, policy=cfg.policy(NEWTON_POLICY),
                                  full_output=True)
        prov = _provenance(res, certificate=cert.summary())
    elif method == "shannon":
        res = shannon_matrix_power(A, float(np.real(alpha)), cfg.policy(SHANNON_POLICY),
                                   full_output=True)
        prov = _provenance(res)
    elif method == "periodic":
        if p["period"] is None:
            raise ParseError("--method periodic needs --period")
        res = periodic_matrix_power(A, p["period"], float(np.real(alpha)), full_output=True)
        prov = _provenance(res)
    else:
        value = eigen_fractional_power_oracle(A, alpha)
        write_matrix(cfg.output, value, {"method": "eigen"})
        return
    _check(res, "matpow")
    write_matrix(cfg.output, res.value, prov)


def _run_fracint(cfg: RunConfig):
    p = cfg.params
    f = _load_sampled(cfg.input)
    alpha = p["alpha"]
    if p["method"] == "rl":
        out = riemann_liouville(f, alpha)
        prov = {"method": "riemann_liouville", "alpha": alpha}
    else:
        res = newton_fractional_integral(f, alpha, cfg.policy(FRACINT_POLICY), full_output=True)
        _check(res, "fracint")
        out = res.value
        prov = _provenance(res, alpha=alpha)
    _emit_signal(cfg, out.x, out.values, prov)


def _run_fracderiv(cfg: RunConfig):
    p = cfg.params
    alpha = p["alpha"]
    method = p["method"]
    if method == "trig":
        if cfg.input:
            x = _load_sampled(cfg.input).x
        else:
            x = np.linspace(0, 2 * np.pi, p["points"])
        d = frac_derivative_trig(p["lam"], p["kind"], alpha)
        prov = {"method": "trig", "alpha": alpha, "lam": d.lam, "kind": d.kind,
                "amplitude": d.amplitude, "phase_shift": d.phase_shift}
        _emit_signal(cfg, x, d(x), prov)
        return
    if not cfg.input:
        raise ParseError(f"--method {method} needs --input")
    f = _load_sampled(cfg.input)
    if method == "fourier-series":
        out = frac_derivative_fourier_series(f, alpha)
    else:
        out = frac_derivative_fourier_transform(f, alpha)
    _emit_signal(cfg, out.x, out.values, {"method": method, "alpha": alpha})


def _run_zeta(cfg: RunConfig):
    p = cfg.params
    s = p["s"]
    policy = cfg.policy(DIRICHLET_POLICY)
    if p["method"] == "eta":
        res = zeta_via_eta(s, policy, full_output=True)
    elif p["method"] == "shifted":
        res = zeta_shifted(s, p["eps"], policy, full_output=True)
    else:
        res = reciprocal_zeta(s, policy, full_output=True)
    _check(res, "zeta")
    _emit_scalar(cfg, res.value, _provenance(res, s=s))


def _run_mellin(cfg: RunConfig):
    p = cfg.params
    values, prov = read_samples(cfg.input)
    samples = DirichletSamples(values, prov)
    res = mellin_interpolate(samples, p["s"], cfg.policy(DIRICHLET_POLICY),
                             residue_at_zero=p["residue_at_zero"], full_output=True)
    _check(res, "mellin")
    _emit_scalar(cfg, res.value, _provenance(res, s=p["s"]))


def _run_frft(cfg: RunConfig):
    p = cfg.params
    f = _load_centred(cfg.input)
    if p["method"] == "alt":
        out = alt_frft(f, p["alpha"])
    else:
        out = literature_frft(f, p["alpha"] * math.pi / 2)
    if "warning" in out.meta:
        log.warning("%s", out.meta["warning"])
    _emit_signal(cfg, f.x, out.samples, dict(out.meta))


def _run_demo(cfg: RunConfig):
    p = cfg.params
    if p["which"] == "translation":
        rep = translation_counterexample(p["t"], p["grid"])
        if cfg.fmt == "csv":
            write_text(cfg.output, long_form_csv({"interpolated": (rep["x"], rep["values"]),
                                                  "true_shift": (rep["x"], rep["true_shift"])}))
            return
        report = {k: rep[k] for k in ("t", "k", "grid", "max_on_interval",
                                      "true_shift_max_on_interval", "l2_error")}
        write_text(cfg.output, to_json(report) + "\n")
        return
    if cfg.input:
        f = _load_centred(cfg.input)
        true = None
    else:
        f = gaussian(16 * p["grid"], step=1.0 / p["grid"])
        true = np.exp(-np.pi * (f.x - p["t"]) ** 2)
    reports = []
    for k in p["k"]:
        out = refined_translation_power(f, p["t"], k)
        entry = {"t": p["t"], "k": k, "grid": p["grid"], "terms": out.meta["terms"]}
        if true is not None:
            entry["l2_error"] = float(math.sqrt(f.step * np.sum(np.abs(out.samples - true) ** 2)))
        reports.append(entry)
    write_text(cfg.output, to_json(reports) + "\n")


_RUNNERS = {"matpow": _run_matpow, "fracint": _run_fracint, "fracderiv": _run_fracderiv,
            "zeta": _run_zeta, "mellin": _run_mellin, "frft": _run_frft, "demo": _run_demo}


def run(cfg: RunConfig) -> int:
    """Run one job; return the process exit status."""
    try:
        _RUNNERS[cfg.subcommand](cfg)
    except NotConverged as exc:
        if exc.result is not None:
            log.error("%s (partial value %s)", exc, getattr(exc.result, "value", None))
        else:
            log.error("%s", exc)
        return exc.exit_code
    except FracterpError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return ParseError.exit_code
    return 0


def _setup_logging():
    level = os.environ.get("FRACTERP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)
    warnings.simplefilter("default")


def main(argv=None) -> int:
    _setup_logging()
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ParseError as exc:
        log.error("%s", exc)
        return exc.exit_code
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
