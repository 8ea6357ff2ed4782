"""Command-line front end.

Subcommands: inverse, expm, vinv, evolve, bloch, esp, partition.  Matrices
travel in the shared text or JSON formats, numeric output carries 12
significant digits, and failures exit with status 2 after a one-line
diagnostic naming the offending input.  The environment variable
VANDERMAT_TOL overrides the default eigenvalue clustering tolerance.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import matio
from .charpoly import inverse_charpoly, inverse_fourier
from .eigen import EigenOptions, partition_count, spectrum_of
from .errors import VandermatError
from .matfunc import expm, expm_degenerate, expm_distinct, expm_taylor
from .plotting import save_bloch_figure
from .quantum import (
    HamiltonianSpec,
    TrotterPlan,
    bloch_path,
    evolve_commuting,
    evolve_const,
    evolve_trotter,
    named_hamiltonian,
)
from .vandermonde import (
    build_vandermonde,
    esp_classic,
    esp_fourier,
    vinv_degenerate,
    vinv_distinct,
    vinv_general,
)
from .charpoly import esp_detform

BUILTIN_PREFIX = "builtin:"


def _eigen_options() -> EigenOptions:
    raw = os.environ.get("VANDERMAT_TOL")
    if raw is None or raw == "":
        return EigenOptions()
    try:
        tol = float(raw)
    except ValueError:
        raise ValueError(f"VANDERMAT_TOL={raw!r} is not a number") from None
    return EigenOptions(cluster_tol=tol)


def _parse_scalar(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValueError(f"scalar {text!r} is not RE or RE,IM")


def _write_text(text: str, output: str | None):
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _emit_matrix(A, args):
    if getattr(args, "format", "text") == "json":
        _write_text(matio.matrix_to_json(A), args.output)
    else:
        _write_text(matio.matrix_to_text(A), args.output)


def _hamiltonian_from_arg(h_arg: str, hbar: float) -> HamiltonianSpec:
    if h_arg.startswith(BUILTIN_PREFIX):
        return named_hamiltonian(h_arg[len(BUILTIN_PREFIX):], hbar=hbar)
    return HamiltonianSpec("constant", matio.load_matrix(h_arg), hbar=hbar)


def _cmd_partition(args) -> int:
    print(partition_count(args.n))
    return 0


def _cmd_esp(args) -> int:
    xs = [matio.parse_complex_entry(tok) for tok in args.x.split(",") if tok.strip()]
    if not xs:
        raise ValueError("--x needs at least one entry")
    if args.method == "classic":
        value = esp_classic(xs, args.j)
    elif args.method == "fourier":
        value = esp_fourier(xs, args.j)
    else:
        value = esp_detform(xs, args.j)
    _write_text(matio.format_complex_entry(value), args.output)
    return 0


def _cmd_inverse(args) -> int:
    A = matio.load_matrix(args.matrix)
    if args.method == "charpoly":
        result = inverse_charpoly(A)
    else:
        result = inverse_fourier(A)
    _emit_matrix(result, args)
    return 0


def _cmd_expm(args) -> int:
    A = matio.load_matrix(args.matrix)
    t = _parse_scalar(args.t)
    if args.method == "oracle":
        _emit_matrix(expm_taylor(A, t), args)
        return 0
    spec = (
        matio.load_spectrum(args.spectrum)
        if args.spectrum
        else spectrum_of(A, _eigen_options())
    )
    if args.method == "distinct":
        result = expm_distinct(A, t, spec)
    elif args.method == "degenerate":
        result = expm_degenerate(A, t, spec)
    else:
        result = expm(A, t, spec)
    _emit_matrix(result, args)
    return 0


def _cmd_vinv(args) -> int:
    spec = matio.load_spectrum(args.spectrum)
    cv = build_vandermonde(spec)
    method = args.method
    if method == "auto":
        if spec.m == 1:
            method = "degenerate"
        elif spec.m == spec.n:
            method = "distinct"
        else:
            method = "general"
    if method == "distinct":
        vinv = vinv_distinct(spec)
    elif method == "degenerate":
        vinv = vinv_degenerate(spec)
    else:
        vinv = vinv_general(cv)
    fmt = matio.matrix_to_json if args.format == "json" else matio.matrix_to_text
    if args.output:
        ext = "json" if args.format == "json" else "txt"
        v_path = f"{args.output}.v.{ext}"
        vinv_path = f"{args.output}.vinv.{ext}"
        Path(v_path).write_text(fmt(cv.matrix) + "\n", encoding="utf-8")
        Path(vinv_path).write_text(fmt(vinv) + "\n", encoding="utf-8")
        print(v_path)
        print(vinv_path)
    else:
        print("# V")
        print(fmt(cv.matrix))
        print("# V^-1")
        print(fmt(vinv))
    return 0


def _propagator_factory(args):
    """Build (u_fn, t0) for the evolve/bloch kinds; u_fn maps time to U."""
    hspec = _hamiltonian_from_arg(args.H, args.hbar)
    t0 = args.t0
    if args.kind == "constant":
        if hspec.kind != "constant":
            raise ValueError(
                f"{args.H} is time-dependent; use --kind commuting or trotter"
            )
        H = hspec.h
        spec = (
            matio.load_spectrum(args.spectrum)
            if getattr(args, "spectrum", None)
            else spectrum_of(H, _eigen_options())
        )
        return lambda t: evolve_const(H, spec, t0, t, args.hbar), t0
    if args.kind == "commuting":
        opts = _eigen_options()
        return lambda t: evolve_commuting(hspec, t0, t, opts), t0
    # trotter
    if args.N is None:
        raise ValueError("--kind trotter requires --N")
    opts = _eigen_options()
    eye = np.eye(hspec.h_at(t0).shape[0], dtype=complex)

    def u_fn(t):
        if t == t0:
            return eye
        return evolve_trotter(hspec, TrotterPlan(t0, t, args.N), opts)

    return u_fn, t0


def _cmd_evolve(args) -> int:
    u_fn, _ = _propagator_factory(args)
    _emit_matrix(u_fn(args.t), args)
    return 0


def _cmd_bloch(args) -> int:
    if args.samples < 2:
        raise ValueError("--samples must be at least 2")
    u_fn, t0 = _propagator_factory(args)
    psi0 = matio.load_vector(args.psi0, size=2)
    times = np.linspace(t0, args.t, args.samples)
    path = bloch_path(psi0, u_fn, times)
    csv_text = matio.bloch_csv(path)
    if args.out == "csv":
        _write_text(csv_text, args.output)
        return 0
    svg_name = args.output or "bloch.svg"
    if not svg_name.endswith(".svg"):
        svg_name += ".svg"
    csv_name = svg_name[: -len(".svg")] + ".csv"
    save_bloch_figure(path, svg_name, title=f"{args.kind} evolution")
    Path(csv_name).write_text(csv_text + "\n", encoding="utf-8")
    print(svg_name)
    print(csv_name)
    return 0


def _add_output_options(sub, with_format: bool = True):
    sub.add_argument("--output", help="write results to this path instead of stdout")
    if with_format:
        sub.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="matrix output format (default text)",
        )


def _add_evolution_options(sub):
    sub.add_argument(
        "--kind", required=True, choices=("constant", "commuting", "trotter"),
        help="evolution regime",
    )
    sub.add_argument(
        "--H", required=True,
        help="Hamiltonian: a matrix file, or builtin:NAME "
             "(hadamard, phase, ramp, driven)",
    )
    sub.add_argument("--t0", type=float, default=0.0, help="initial time (default 0)")
    sub.add_argument("--t", type=float, required=True, help="final time")
    sub.add_argument("--N", type=int, default=None, help="product-formula step count")
    sub.add_argument("--hbar", type=float, default=1.0, help="hbar (default 1)")
    sub.add_argument("--spectrum", help="spectrum JSON for --kind constant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vandermat",
        description="Eigenvalue-driven matrix functions and qubit evolution.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("inverse", help="invert a matrix")
    p.add_argument("--matrix", required=True, help="matrix file (text or JSON)")
    p.add_argument(
        "--method", choices=("fourier", "charpoly"), default="fourier",
        help="adjugate route (default) or power-sum route",
    )
    _add_output_options(p)
    p.set_defaults(handler=_cmd_inverse)

    p = subs.add_parser("expm", help="matrix exponential exp(t A)")
    p.add_argument("--matrix", required=True, help="matrix file (text or JSON)")
    p.add_argument("--t", required=True, help="scalar factor, RE or RE,IM")
    p.add_argument("--spectrum", help="spectrum JSON (computed when omitted)")
    p.add_argument(
        "--method",
        choices=("general", "distinct", "degenerate", "oracle"),
        default="general",
    )
    _add_output_options(p)
    p.set_defaults(handler=_cmd_expm)

    p = subs.add_parser("vinv", help="confluent Vandermonde matrix and inverse")
    p.add_argument("--spectrum", required=True, help="spectrum JSON file")
    p.add_argument(
        "--method",
        choices=("general", "distinct", "degenerate", "auto"),
        default="general",
    )
    _add_output_options(p)
    p.set_defaults(handler=_cmd_vinv)

    p = subs.add_parser("evolve", help="propagator over a time span")
    _add_evolution_options(p)
    _add_output_options(p)
    p.set_defaults(handler=_cmd_evolve)

    p = subs.add_parser("bloch", help="Bloch path of an evolving qubit state")
    _add_evolution_options(p)
    p.add_argument("--psi0", required=True, help="two-component state file")
    p.add_argument("--samples", type=int, default=512, help="time samples (default 512)")
    p.add_argument(
        "--out", choices=("csv", "svg"), default="csv",
        help="csv table, or svg figure with the csv written alongside",
    )
    _add_output_options(p, with_format=False)
    p.set_defaults(handler=_cmd_bloch)

    p = subs.add_parser("esp", help="elementary symmetric polynomial")
    p.add_argument("--x", required=True, help="comma-separated values")
    p.add_argument("--j", type=int, required=True, help="order")
    p.add_argument(
        "--method", choices=("classic", "fourier", "detform"), default="classic",
    )
    _add_output_options(p, with_format=False)
    p.set_defaults(handler=_cmd_esp)

    p = subs.add_parser("partition", help="number of integer partitions")
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_partition)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (VandermatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
