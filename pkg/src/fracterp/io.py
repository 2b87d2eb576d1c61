"""File formats.

* matrices: JSON ``{"dim": n, "entries": [[re, im], ...]}`` in row-major order;
* signals: CSV with header ``x,re,im``, preceded by ``#`` comment lines;
* sample tables: CSV ``k,re,im,provenance``;
* plot data: long-form CSV ``x,re,im,series``.

Floats are written with ``repr`` so that every file parses back to the
identical values.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import sys

import numpy as np

from .errors import ParseError

PROVENANCE_PREFIX = "# provenance: "


def parse_complex(text: str) -> complex:
    """``"re"`` or ``"re,im"``."""
    parts = str(text).split(",")
    if not 1 <= len(parts) <= 2:
        raise ParseError(f"expected 're' or 're,im', got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"not a number: {text!r}") from exc
    if not all(math.isfinite(v) for v in vals):
        raise ParseError(f"not finite: {text!r}")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _num(v: float) -> str:
    return repr(float(v))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def matrix_to_dict(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"dim": int(A.shape[0]),
            "entries": [[float(z.real), float(z.imag)] for z in A.ravel()]}


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        n = int(d["dim"])
        entries = d["entries"]
        vals = [complex(float(e[0]), float(e[1])) if isinstance(e, (list, tuple)) else complex(float(e))
                for e in entries]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed matrix JSON: {exc}") from exc
    if n < 1 or len(vals) != n * n:
        raise ParseError(f"matrix JSON: expected {n * n} entries, got {len(vals)}")
    A = np.array(vals, dtype=complex).reshape(n, n)
    if not np.all(np.isfinite(A)):
        raise ParseError("matrix entries must be finite")
    return A


def read_matrix(path) -> np.ndarray:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return matrix_from_dict(d)


def write_matrix(path, A, provenance: dict | None = None):
    d = matrix_to_dict(A)
    if provenance is not None:
        d["provenance"] = provenance
    _write_text(path, to_json(d) + "\n")


# ---------------------------------------------------------------------------
# signals
# ---------------------------------------------------------------------------

def signal_to_csv(x, values, provenance: dict | None = None, comments=()) -> str:
    buf = _io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    if provenance is not None:
        buf.write(PROVENANCE_PREFIX + json.dumps(_jsonable(provenance), sort_keys=True) + "\n")
    buf.write("x,re,im\n")
    for xi, v in zip(np.asarray(x, dtype=float), np.asarray(values, dtype=complex)):
        buf.write(f"{_num(xi)},{_num(v.real)},{_num(v.imag)}\n")
    return buf.getvalue()


def parse_signal_csv(text: str):
    """Return ``(x, values, provenance)``; provenance is ``None`` if absent."""
    provenance = None
    rows = []
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(PROVENANCE_PREFIX.strip()):
                try:
                    provenance = json.loads(line[len(PROVENANCE_PREFIX):])
                except json.JSONDecodeError:
                    pass
            continue
        if not header_seen:
            if [h.strip() for h in line.split(",")] != ["x", "re", "im"]:
                raise ParseError(f"line {lineno}: expected header 'x,re,im'")
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields")
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise ParseError("signal CSV has no data rows")
    arr = np.array(rows)
    if not np.all(np.isfinite(arr)):
        raise ParseError("signal values must be finite")
    return arr[:, 0], arr[:, 1] + 1j * arr[:, 2], provenance


def read_signal(path):
    with open(path) as fh:
        return parse_signal_csv(fh.read())


def uniform_step(x: np.ndarray, rtol: float = 1e-9) -> float:
    """Common spacing of ``x``; ``ParseError`` if the grid is not uniform."""
    if x.size < 2:
        raise ParseError("need at least two grid points")
    d = np.diff(x)
    h = (x[-1] - x[0]) / (x.size - 1)
    if not h > 0 or np.max(np.abs(d - h)) > rtol * max(abs(h), 1.0) * 10:
        raise ParseError("grid is not uniform and increasing")
    return float(h)


# ---------------------------------------------------------------------------
# sample tables and plot data
# ---------------------------------------------------------------------------

def samples_to_csv(rows) -> str:
    buf = _io.StringIO()
    buf.write("k,re,im,provenance\n")
    w = csv.writer(buf, lineterminator="\n")
    for k, re, im, prov in rows:
        w.writerow([int(k), _num(re), _num(im), prov])
    return buf.getvalue()


def parse_samples_csv(text: str):
    """Return ``(values, provenance)`` from a ``k,re,im,provenance`` table."""
    lines = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty sample table") from None
    if [h.strip() for h in header[:3]] != ["k", "re", "im"]:
        raise ParseError("expected header 'k,re,im[,provenance]'")
    values, prov = [], []
    for i, row in enumerate(reader):
        try:
            k = int(row[0])
            v = complex(float(row[1]), float(row[2]))
        except (ValueError, IndexError) as exc:
            raise ParseError(f"row {i + 1}: {exc}") from exc
        if k != i:
            raise ParseError(f"row {i + 1}: expected k = {i}, got {k}")
        values.append(v)
        prov.append(row[3] if len(row) > 3 and row[3] else "user-supplied")
    return np.array(values, dtype=complex), tuple(prov)


def read_samples(path):
    with open(path) as fh:
        return parse_samples_csv(fh.read())


def long_form_csv(series: dict) -> str:
    """``{label: (x, values)}`` as rows ``x,re,im,series``."""
    buf = _io.StringIO()
    buf.write("x,re,im,series\n")
    for label, (x, values) in series.items():
        for xi, v in zip(np.asarray(x, dtype=float), np.asarray(values, dtype=complex)):
            buf.write(f"{_num(xi)},{_num(v.real)},{_num(v.imag)},{label}\n")
    return buf.getvalue()


def _write_text(path, text: str):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


write_text = _write_text
