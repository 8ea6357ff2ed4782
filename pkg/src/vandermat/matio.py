"""Readers and writers for the shared matrix, spectrum, and path formats.

Matrix text: one row per line, whitespace-separated entries shaped like
``a``, ``a+bi``, ``a-bi``, a bare ``i`` meaning the imaginary unit, or a
pure-imaginary ``bi``.  Blank lines and ``#`` comment lines are skipped.
Matrix JSON: {"n": int, "re": [[...]], "im": [[...]]}.
Spectrum JSON: {"lambdas": [[re, im], ...], "mus": [...]}.
All numeric output carries 12 significant digits, enough to re-parse
within a relative 1e-11.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .eigen import Spectrum

SIG_DIGITS = 12

_FLOAT = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^({_FLOAT})$")
_RE_IMAG = re.compile(rf"^([+-]?)({_FLOAT})?i$")
_RE_FULL = re.compile(rf"^({_FLOAT})([+-])({_FLOAT})?i$")


def parse_complex_entry(text: str) -> complex:
    """Parse one matrix entry; raises ValueError naming the bad token."""
    s = text.strip()
    m = _RE_REAL.match(s)
    if m:
        return complex(float(m.group(1)), 0.0)
    m = _RE_IMAG.match(s)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    m = _RE_FULL.match(s)
    if m:
        mag = float(m.group(3)) if m.group(3) else 1.0
        return complex(float(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise ValueError(f"unparseable matrix entry {text!r}")


def format_number(x: float) -> str:
    return f"{float(x):.{SIG_DIGITS}g}"


def format_complex_entry(z) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return format_number(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{format_number(z.real)}{sign}{format_number(abs(z.imag))}i"


def parse_matrix_text(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append((lineno, [parse_complex_entry(tok) for tok in stripped.split()]))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise ValueError("no matrix rows found")
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise ValueError(
                f"line {lineno}: row has {len(row)} entries, expected {width}"
            )
    return np.array([row for _, row in rows], dtype=complex)


def matrix_to_text(A) -> str:
    A = np.asarray(A, dtype=complex)
    return "\n".join(
        " ".join(format_complex_entry(z) for z in row) for row in A
    )


def matrix_to_json(A) -> str:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("JSON matrix form is defined for square matrices")
    payload = {
        "n": A.shape[0],
        "re": [[float(v) for v in row] for row in A.real],
        "im": [[float(v) for v in row] for row in A.imag],
    }
    return json.dumps(payload)


def matrix_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    try:
        n = int(data["n"])
        re_part = np.array(data["re"], dtype=float)
        im_part = np.array(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if re_part.shape != (n, n) or im_part.shape != (n, n):
        raise ValueError(
            f"matrix JSON shapes {re_part.shape} / {im_part.shape} do not match n = {n}"
        )
    return re_part + 1j * im_part


def parse_matrix(text: str) -> np.ndarray:
    """Sniff JSON versus the plain text form and parse accordingly."""
    head = text.lstrip()
    if head.startswith("{"):
        return matrix_from_json(text)
    return parse_matrix_text(text)


def load_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def load_vector(path, size: int | None = None) -> np.ndarray:
    """Read a vector given as a single row or a single column."""
    arr = load_matrix(path)
    if arr.ndim == 2 and 1 in arr.shape:
        vec = arr.ravel()
    elif arr.ndim == 1:
        vec = arr
    else:
        raise ValueError(f"{path}: expected a single row or column, got shape {arr.shape}")
    if size is not None and vec.size != size:
        raise ValueError(f"{path}: expected {size} components, got {vec.size}")
    return vec


def spectrum_from_json(text: str) -> Spectrum:
    data = json.loads(text)
    try:
        lambdas = np.array(
            [complex(float(pair[0]), float(pair[1])) for pair in data["lambdas"]]
        )
        mus = np.array([int(m) for m in data["mus"]])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"malformed spectrum JSON: {exc}") from exc
    return Spectrum(lambdas, mus)


def load_spectrum(path) -> Spectrum:
    with open(path, encoding="utf-8") as fh:
        return spectrum_from_json(fh.read())


def spectrum_to_json(spec: Spectrum) -> str:
    return json.dumps(
        {
            "lambdas": [[float(z.real), float(z.imag)] for z in spec.lambdas],
            "mus": [int(m) for m in spec.mus],
        }
    )


def bloch_csv(path_obj) -> str:
    """Delimited Bloch-path table with a header and 12-digit values."""
    lines = ["t,x,y,z"]
    for t, x, y, z in path_obj.samples:
        lines.append(",".join(format_number(v) for v in (t, x, y, z)))
    return "\n".join(lines)
