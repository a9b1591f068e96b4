"""Command-line front end.

Subcommands print reports or CSV built from library calls only::

    specshare secrecy
    specshare pcmin --rs-list 0.5,1,1.5 --pp-range 0.1:3:0.1
    specshare mu-vs-t --t-range 0.01:0.99:0.01
    specshare optimize-sweep --var p_c --range 0.1:3:0.1
    specshare simulate --frames 1000000 --seed 7 --mode fast

Exit codes: 0 success, 2 validation error, 3 only infeasible rows,
4 a Monte Carlo estimate fell outside its band.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys

from . import mc_oracle, optimize, scenario as scenario_mod
from .channel import link_capacity, link_snrs, eavesdropper_capacity
from .errors import DomainError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_BAND = 4
SEED_ENV = "SPECSHARE_SEED"
DEFAULT_SEED = 2021
RANGE_TOL = 1e-12


def parse_range(text: str) -> tuple[float, ...]:
    """``lo:hi:step`` grid; ``hi`` is included when it sits on the step lattice."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"range {text!r} is not lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise ValidationError(f"range {text!r} has a non-numeric bound") from None
    if not all(math.isfinite(v) for v in (lo, hi, step)):
        raise ValidationError(f"range {text!r} must be finite")
    if step <= 0:
        raise ValidationError(f"range {text!r}: step must be > 0")
    if hi < lo:
        raise ValidationError(f"range {text!r}: hi is below lo")
    ratio = (hi - lo) / step
    nearest = round(ratio)
    on_lattice = abs(ratio - nearest) <= RANGE_TOL * max(1.0, abs(ratio))
    n = nearest if on_lattice else math.floor(ratio)
    values = [round(lo + i * step, 12) for i in range(n + 1)]
    if on_lattice:
        values[-1] = hi
    return tuple(values)


def parse_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ValidationError(f"list {text!r} has a non-numeric entry") from None
    if not values:
        raise ValidationError("empty list")
    return values


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.6f}"


def write_csv(rows: list[dict], columns: list[str], out, comments=()) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    for line in comments:
        out.write(f"# {line}\n")


def _load(args):
    return scenario_mod.load(args.scenario, args.set or ())


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_secrecy(args) -> int:
    sc = _load(args)
    geom = sc.geometry()
    g = link_snrs(geom, sc.p_p, sc.p_c)
    c_p = link_capacity(g["gamma_p"])
    c_c = link_capacity(g["gamma_c"])
    c_e = eavesdropper_capacity(g["gamma_pe"], g["gamma_ce"])
    lines = [f"C_P = {c_p:.6f}", f"C_C = {c_c:.6f}", f"C_E = {c_e:.6f}", f"C_S = {c_p - c_e:.6f}"]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_pcmin(args) -> int:
    sc = _load(args)
    if args.rs_list:
        rs_list = parse_list(args.rs_list)
    elif sc.r_s is not None:
        rs_list = (sc.r_s,)
    else:
        rs_list = (0.25, 0.5, 1.0, 1.5, 1.75)
    grid = parse_range(args.pp_range)
    rows = []
    for r_s in rs_list:
        spec = optimize.SweepSpec("p_p", grid, sc.geometry(), sc.sensing(), p_p=sc.p_p, p_c=sc.p_c, r_s=r_s, kind="pcmin")
        rows.extend(optimize.sweep(spec))
    buf = io.StringIO()
    write_csv(rows, ["r_s", "p_p", "p_c_min", "status"], buf)
    _emit(args, buf.getvalue())
    return EXIT_INFEASIBLE if optimize.all_infeasible(rows) else EXIT_OK


def cmd_mu_vs_t(args) -> int:
    sc = _load(args)
    spec = optimize.SweepSpec("t", parse_range(args.t_range), sc.geometry(), sc.sensing(), p_p=sc.p_p, p_c=sc.p_c)
    spec.validate()
    rows = optimize.sweep(spec)
    best = optimize.optimal_sensing_time(sc.geometry(), sc.sensing(), sc.powers())
    buf = io.StringIO()
    summary = f"t_star={best.t_star:.6f},mu_star={best.mu_star:.6f},flag={best.flag}"
    write_csv(rows, ["t", "pr_f", "pr_idle", "r_c", "mu"], buf, comments=[summary])
    _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_optimize_sweep(args) -> int:
    sc = _load(args)
    default = "0.1:3:0.1" if args.var == "p_c" else "0.5:3:0.1"
    grid = parse_range(args.range or default)
    spec = optimize.SweepSpec(args.var, grid, sc.geometry(), sc.sensing(), p_p=sc.p_p, p_c=sc.p_c, kind="optimum")
    rows = optimize.sweep(spec)
    buf = io.StringIO()
    write_csv(rows, ["var_value", "t_star", "mu_star", "c_s", "flag"], buf)
    _emit(args, buf.getvalue())
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{SEED_ENV}={raw!r} is not an integer") from None


def cmd_simulate(args) -> int:
    sc = _load(args)
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = mc_oracle.FrameSimConfig(sc.geometry(), sc.sensing(), sc.operating_point(), args.frames, seed, args.mode)
    result = mc_oracle.simulate_frames(cfg, workers=args.workers, backend=args.backend)
    checks = mc_oracle.frame_bands(cfg, result)
    lines = [
        f"mode={cfg.mode} frames={cfg.frames} seed={seed} t={cfg.op.t:.6f} n_samples={result.n_samples}",
        f"{'quantity':<10} {'analytic':>10} {'empirical':>10} {'halfwidth':>10}  status",
    ]
    for c in checks:
        status = "ok" if c.ok else "OUTSIDE"
        lines.append(f"{c.name:<10} {c.analytic:>10.6f} {c.empirical:>10.6f} {c.halfwidth:>10.6f}  {status}")
    lines.append(f"pr_jam_hat = {result.pr_jam_hat:.6f}")
    lines.append(f"throughput_hat = {result.throughput_hat:.6f}")
    if cfg.mode == "sample" and result.n_samples < 100:
        lines.append(f"note: {result.n_samples} samples per sensing window; the CLT approximation is loose")
    passed = all(c.ok for c in checks)
    lines.append("result: " + ("PASS" if passed else "FAIL"))
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_BAND


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="FILE", help="scenario file (key = value lines)")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", help="override one scenario key")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="specshare", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("secrecy", parents=[common], help="capacities and secrecy capacity")
    p.set_defaults(func=cmd_secrecy)

    p = sub.add_parser("pcmin", parents=[common], help="minimum jamming power vs p_p")
    p.add_argument("--rs-list", help="comma-separated target secrecy rates")
    p.add_argument("--pp-range", default="0.1:3:0.1", help="lo:hi:step grid of p_p")
    p.set_defaults(func=cmd_pcmin)

    p = sub.add_parser("mu-vs-t", parents=[common], help="energy efficiency over the sensing fraction")
    p.add_argument("--t-range", default="0.01:0.99:0.01")
    p.set_defaults(func=cmd_mu_vs_t)

    p = sub.add_parser("optimize-sweep", parents=[common], help="optimal sensing point vs a power")
    p.add_argument("--var", choices=["p_c", "p_p"], required=True)
    p.add_argument("--range", help="lo:hi:step grid of the swept power")
    p.set_defaults(func=cmd_optimize_sweep)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo frame validation")
    p.add_argument("--frames", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, help=f"RNG seed (default: ${SEED_ENV} or {DEFAULT_SEED})")
    p.add_argument("--mode", choices=mc_oracle.FRAME_MODES, default="fast")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--backend", choices=["compiled", "python"], help="kernel backend override")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, DomainError, OSError, ImportError) as exc:
        print(f"specshare {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
