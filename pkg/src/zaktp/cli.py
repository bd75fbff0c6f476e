"""Command-line front end: every analysis as a reproducible scripted run.

Weights are comma-separated reals (``--weights 1,-1``); truncation families
use ``--gen harmonic:c=1`` style specs with ``--n``.  Numeric output goes
through the deterministic report writers (17 significant digits, LF).
Exit codes: 0 success, 1 domain error (the error class name is printed),
2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .analysis import Region, certify_zero_free, locate_zero_half
from .convergence import (
    WeightGenerator,
    convergence_sweep,
    psi_decay_diagnostic,
    truncate,
)
from .errors import ZakTPError
from .frames import discrete_frame_test, frame_bounds, periodize_sample
from .report_io import dumps_report, write_report
from .weights import WeightMultiset, eval_tp, make_weights
from .zak import compute_zak_grid


def _apply_thread_cap() -> None:
    cap = os.environ.get("ZAKTP_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


def _parse_weights(text: str) -> WeightMultiset:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weights list {text!r}")
    return make_weights(vals)


def _parse_gen(text: str) -> WeightGenerator:
    rule, _, rest = text.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            params[key.strip()] = float(val)
    if rule == "harmonic":
        return WeightGenerator.harmonic(params.get("c", 1.0))
    if rule == "alternating":
        return WeightGenerator.alternating(params.get("c", 1.0))
    if rule == "geometric":
        return WeightGenerator.geometric(params.get("c", 1.0), params.get("r", 2.0))
    raise argparse.ArgumentTypeError(f"unknown generator rule {rule!r}")


def _parse_res(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad resolution {text!r}, expected like 64x64")


def _parse_floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _weights_from(args) -> WeightMultiset:
    if getattr(args, "weights", None) is not None:
        return args.weights
    if getattr(args, "gen", None) is not None:
        return truncate(args.gen, args.n)
    raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zaktp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, gen_ok=True):
        sp.add_argument("--weights", type=_parse_weights, help="comma-separated TP weights")
        if gen_ok:
            sp.add_argument("--gen", type=_parse_gen, help="generator spec, e.g. harmonic:c=1")
            sp.add_argument("--n", type=int, default=8, help="truncation length for --gen")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("eval", help="evaluate the TP window on a grid")
    add_common(sp)
    sp.add_argument("--x", type=_parse_floats, help="comma-separated sample points")
    sp.add_argument("--grid", help="lo:hi:count uniform grid")
    sp.add_argument(
        "--apply-shift",
        action="store_true",
        help="shift the argument by the mean sum(1/a_nu) so the peak sits near 0",
    )

    sp = sub.add_parser("zak", help="sample the Zak transform over a cell rectangle")
    add_common(sp)
    sp.add_argument("--nx", type=int, default=64)
    sp.add_argument("--nomega", type=int, default=64)
    sp.add_argument("--tau", type=float, default=0.0)
    sp.add_argument("--source", choices=("ebspline_factorized", "direct_series"), default="ebspline_factorized")

    sp = sub.add_parser("zero", help="locate the zero of Z(., 1/2)")
    add_common(sp)
    sp.add_argument("--tol", type=float, default=1e-12)

    sp = sub.add_parser("certify", help="certify a region zero-free")
    add_common(sp)
    sp.add_argument("--x-range", type=_parse_floats, default=[0.0, 1.0])
    sp.add_argument("--omega-range", type=_parse_floats, default=[0.0, 0.48])
    sp.add_argument("--tau", type=float, default=0.0)
    sp.add_argument("--step", type=float, default=1 / 1024)

    sp = sub.add_parser("framebounds", help="Gabor frame-bound estimates for alpha=1, beta=1/N")
    add_common(sp)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--res", type=_parse_res, default=(64, 64))
    sp.add_argument("--refinements", type=int, default=3)

    sp = sub.add_parser("discrete-frame", help="periodized discrete Gabor frame test on C^K")
    add_common(sp)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-14, help="periodization tail tolerance")
    sp.add_argument("--window-only", action="store_true", help="emit the discrete window instead of the test report")

    sp = sub.add_parser("converge", help="truncation convergence sweep for a generator")
    sp.add_argument("--gen", type=_parse_gen, required=True)
    sp.add_argument("--ns", type=_parse_floats, default=[4, 8, 16, 32])
    sp.add_argument("--sigma", type=float, default=None)
    sp.add_argument("--n-ref", type=int, default=64)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("psi", help="decay diagnostic of the reciprocal Laplace transform")
    add_common(sp)
    sp.add_argument("--omega", type=float, default=0.0)
    sp.add_argument("--tau-min", type=float, default=10.0)
    sp.add_argument("--tau-max", type=float, default=1e4)
    sp.add_argument("--samples", type=int, default=40)
    sp.add_argument("--p", type=int, default=None)
    return p


def _run(args) -> int:
    if args.command == "eval":
        w = _weights_from(args)
        if args.x is not None:
            xs = np.asarray(args.x, dtype=float)
        elif args.grid is not None:
            lo, hi, count = args.grid.split(":")
            xs = np.linspace(float(lo), float(hi), int(count))
        else:
            xs = np.linspace(-10.0 / w.a0, 10.0 / w.a0, 201)
        if args.apply_shift:
            xs_eval = xs + sum(1.0 / a for a in w.raw)
        else:
            xs_eval = xs
        vals = eval_tp(w, xs_eval)
        rows = [("x", "g")] + [(float(x), float(v)) for x, v in zip(xs, vals)]
        write_report(rows, "csv", args.out)
        return 0

    if args.command == "zak":
        w = _weights_from(args)
        xs = np.arange(args.nx) / args.nx
        oms = np.arange(args.nomega) / args.nomega
        grid = compute_zak_grid(w, xs, oms, tau=args.tau, source=args.source)
        write_report(grid, args.format, args.out)
        return 0

    if args.command == "zero":
        w = _weights_from(args)
        x = locate_zero_half(w, tol=args.tol)
        sys.stdout.write(dumps_report({"x_zero": x, "omega": 0.5}))
        return 0

    if args.command == "certify":
        w = _weights_from(args)
        region = Region(
            x=(args.x_range[0], args.x_range[1]),
            omega=(args.omega_range[0], args.omega_range[1]),
            tau=args.tau,
        )
        cert = certify_zero_free(w, region, grid_step=args.step)
        write_report(cert, "json", args.out)
        return 0

    if args.command == "framebounds":
        w = _weights_from(args)
        rep = frame_bounds(w, args.N, resolution=args.res, refinements=args.refinements)
        write_report(rep, "json", args.out)
        return 0

    if args.command == "discrete-frame":
        w = _weights_from(args)
        window = periodize_sample(w, args.K, tol=args.tol)
        if args.window_only:
            write_report(window, "csv", args.out)
        else:
            report = discrete_frame_test(window, args.M)
            write_report(report, "json", args.out)
        return 0

    if args.command == "converge":
        rows = convergence_sweep(args.gen, [int(n) for n in args.ns], args.sigma, int(args.n_ref))
        out_rows = [("n", "sigma", "distance", "tail_proxy")] + [tuple(r) for r in rows]
        write_report(out_rows, "csv", args.out)
        return 0

    if args.command == "psi":
        w = _weights_from(args)
        p = args.p if args.p is not None else w.n
        taus = np.logspace(np.log10(args.tau_min), np.log10(args.tau_max), args.samples)
        slope = psi_decay_diagnostic(w, args.omega, taus, p)
        sys.stdout.write(dumps_report({"fitted_exponent": slope, "p": p}))
        return 0

    return 2


def parse_and_run(argv=None) -> int:
    _apply_thread_cap()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _run(args)
    except ZakTPError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(parse_and_run())
