"""Command-line front end.

    polelyap solve --gamow 100 --dv 1e-3
    polelyap solve --spectrum poles.txt --reverse --dv 1e-6 --format json
    polelyap sweep --n 5,10,30 --dv 1e-3,1e-6 --out sweep.csv
    polelyap table1
    polelyap lifetimes --alpha 1.5 --n 10
    polelyap escape --gamow 10 --t 1
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import __version__
from .ks_solver import DEFAULT_CONFIG, KsSolverError, SolverConfig, solve_ks_time
from .pesin import lifetimes, pesin_report
from .spectra import UnitSystem, gamow_spectrum, read_spectrum, time_reverse
from .sweep import FORMATS, SweepGrid, compare_table1, emit, fmt, dense_grid_n, run_sweep
from .volume import escape_factor


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _config(args) -> SolverConfig:
    return SolverConfig(rel_tol=args.tol, max_iter=DEFAULT_CONFIG.max_iter, scan_points=DEFAULT_CONFIG.scan_points)


def _spectrum(args):
    if args.spectrum:
        s = read_spectrum(args.spectrum)
    else:
        units = UnitSystem(hbar=args.hbar, gamma0=args.gamma0)
        # the Gamow model is solved as its expanding (time-reversed) twin
        s = time_reverse(gamow_spectrum(args.gamow, units))
    if args.reverse:
        s = time_reverse(s)
    return s


def _write_kv(values: dict, fmt_name: str, out) -> None:
    if fmt_name == "json":
        out.write(json.dumps(values, indent=2) + "\n")
    else:
        for key, value in values.items():
            out.write(f"{key}={fmt(value) if isinstance(value, float) else value}\n")


def _open_out(path):
    return contextlib.nullcontext(sys.stdout) if path in (None, "-") else open(path, "w")


def cmd_solve(args) -> int:
    s = _spectrum(args)
    try:
        sol = solve_ks_time(s, args.dv, _config(args))
    except KsSolverError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    values = {
        "N_poles": len(s),
        "dV": args.dv,
        "t0": sol.t0,
        "T0": sol.T0,
        "residual": sol.residual,
        "iterations": sol.iterations,
    }
    if sol.t0 > 0:
        values.update(pesin_report(s, sol, args.dv, reversed=args.gamow is not None).as_dict())
    with _open_out(args.out) as out:
        _write_kv(values, args.format, out)
    return 0


def cmd_sweep(args) -> int:
    n_values = dense_grid_n() if args.dense_grid else tuple(_ints(args.n)) if args.n else None
    kwargs = {"solver": _config(args)}
    if n_values:
        kwargs["n_values"] = n_values
    if args.dv:
        kwargs["dv_values"] = tuple(_floats(args.dv))
    result = run_sweep(SweepGrid(**kwargs), workers=args.workers)
    emit(result, args.format, args.out)
    return 0


def cmd_table1(args) -> int:
    result = run_sweep(SweepGrid(solver=_config(args)), workers=args.workers)
    report = compare_table1(result)
    with _open_out(args.out) as out:
        for line in report.lines():
            out.write(line + "\n")
        for dv, fits in result.fits.items():
            f = fits["free"]
            out.write(f"fit dV={dv:.0e}: slope={f.slope:.5f} +- {f.slope_stderr:.5f} intercept={f.intercept:.4f} r2={f.r_squared:.6f}\n")
        mean, spread = result.aggregate_alpha
        out.write(f"aggregate alpha = {mean:.4f} +- {spread:.4f}\n")
    return 0 if report.passed else 1


def cmd_lifetimes(args) -> int:
    table = lifetimes(args.alpha, args.n, UnitSystem(hbar=args.hbar, gamma0=args.gamma0))
    with _open_out(args.out) as out:
        out.write("n,lambda_n,t_n\n")
        for n, lam, t in table.rows():
            out.write(f"{n},{fmt(lam)},{fmt(t)}\n")
    return 0


def cmd_escape(args) -> int:
    s = _spectrum(args)
    e = escape_factor(s, args.t)
    with _open_out(args.out) as out:
        _write_kv({"t": e.time, "gamma_escape": e.gamma_escape, "contraction": e.contraction}, args.format, out)
    return 0


def _add_spectrum_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spectrum", help="pole file, one 'omega gamma' per line")
    src.add_argument("--gamow", type=int, metavar="N", help="time-reversed Gamow model with N bath oscillators")
    p.add_argument("--reverse", action="store_true", help="apply time reversal (gamma -> -gamma) to the spectrum")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--gamma0", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polelyap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="KS-time, KS-entropy and exponents of one spectrum")
    _add_spectrum_args(p)
    p.add_argument("--dv", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=DEFAULT_CONFIG.rel_tol)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve a (N, dV) grid of Gamow models")
    p.add_argument("--n", help="comma-separated bath sizes (default: Table 1 rows)")
    p.add_argument("--dense-grid", action="store_true", help="N = 5..100 step 5 and 1000..10000 step 1000")
    p.add_argument("--dv", help="comma-separated initial volumes")
    p.add_argument("--tol", type=float, default=DEFAULT_CONFIG.rel_tol)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table1", help="reproduce Table 1 and compare with the printed values")
    p.add_argument("--tol", type=float, default=DEFAULT_CONFIG.rel_tol)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("lifetimes", help="per-level decay rates and lifetimes")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--gamma0", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lifetimes)

    p = sub.add_parser("escape", help="contraction exponent of the conditionally invariant measure")
    _add_spectrum_args(p)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_escape)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
