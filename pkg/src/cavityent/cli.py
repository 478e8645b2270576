"""Command-line front end: trajectory sweeps, figure presets, frontier curves.

All rates are expressed in units of the coupling g: ``--delta`` is Delta/g,
``--gamma`` is gamma*g. CSV files start with '#'-prefixed metadata lines,
then a header row; numbers are printed with 12 significant digits.

Exit codes: 0 success, 2 validation error, 1 runtime failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, analytic, frontier, trajectory
from .model import SystemParams

TRAJECTORY_HEADER = "gt,concurrence,linear_entropy,bell_max,purity"
FRONTIER_HEADER = "linear_entropy,value"
RECURRENCE_HEADER = "k,gt,concurrence"

# parameters exactly as printed in the figure captions
FIGURE_PRESETS: dict[str, dict] = {
    "1a": dict(delta=0.0, lambda_=1.0, gamma=0.0, gt_max=50.0, curves=("werner", "mems")),
    "1b": dict(delta=0.5, lambda_=1.0, gamma=0.0, gt_max=50.0, curves=("werner", "mems")),
    "1c": dict(delta=5.0, lambda_=1.0, gamma=0.0, gt_max=50.0, curves=("werner", "mems")),
    "2a": dict(delta=0.5, lambda_=0.9, gamma=0.0, gt_max=500.0, curves=("werner", "mems")),
    "2b": dict(delta=0.5, lambda_=0.7, gamma=0.0, gt_max=500.0, curves=("werner", "mems")),
    "2c": dict(delta=0.5, lambda_=0.6, gamma=0.0, gt_max=500.0, curves=("werner", "mems")),
    "3a": dict(delta=0.0, lambda_=1.0, gamma=0.0, gt_max=500.0, curves=("bell",)),
    "3b": dict(delta=0.01, lambda_=1.0, gamma=0.0, gt_max=500.0, curves=("bell",)),
    "3c": dict(delta=5.0, lambda_=1.0, gamma=0.0, gt_max=500.0, curves=("bell",)),
    "4a": dict(delta=0.0, lambda_=1.0, gamma=0.01, gt_max=500.0, curves=("werner", "mems")),
    "4b": dict(delta=0.5, lambda_=1.0, gamma=0.01, gt_max=500.0, curves=("werner", "mems")),
    "4c": dict(delta=1.0, lambda_=1.0, gamma=0.01, gt_max=500.0, curves=("werner", "mems")),
}


@dataclass
class RunConfig:
    delta_over_g: float = 0.0
    lambda_: float = 1.0
    gamma_times_g: float = 0.0
    gt_max: float = 50.0
    n_steps: int | None = None
    n_max: int = 1
    source: str = trajectory.ANALYTIC
    seed: int = 0
    output: str = "-"
    timestamp: bool = True

    def system_params(self) -> SystemParams:
        # internal unit system: g = 1, so delta and gamma carry the flag
        # values directly
        return SystemParams(
            g=1.0,
            delta=self.delta_over_g,
            lambda_=self.lambda_,
            gamma=self.gamma_times_g,
            n_max=self.n_max,
        )

    def grid_points(self) -> int:
        if self.n_steps is not None:
            return self.n_steps
        return 5001 if self.gt_max <= 50.0 else 50001


def default_steps(gt_max: float) -> int:
    return 5001 if gt_max <= 50.0 else 50001


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _write_csv(path: str, meta: dict, header: str, rows, timestamp: bool):
    lines = [f"# cavityent {__version__}"]
    for key, value in meta.items():
        lines.append(f"# {key} = {value}")
    if timestamp:
        lines.append(f"# generated = {datetime.now(timezone.utc).isoformat()}")
    lines.append(header)
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_config_file(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values

_CONFIG_KEYS = {
    "delta": ("delta", float),
    "lambda": ("lambda_", float),
    "gamma": ("gamma", float),
    "gt_max": ("gt_max", float),
    "n_steps": ("n_steps", int),
    "n_max": ("n_max", int),
    "source": ("source", str),
    "seed": ("seed", int),
}


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser):
    """Fill argparse defaults from a key=value config file; flags win."""
    if not getattr(args, "config", None):
        return
    file_values = _load_config_file(args.config)
    for key, value in file_values.items():
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
        dest, cast = _CONFIG_KEYS[key]
        if not hasattr(args, dest):
            continue
        # a flag given on the command line overrides the file
        if getattr(args, dest) == parser.get_default(dest):
            setattr(args, dest, cast(value))


def _trajectory_rows(traj: trajectory.Trajectory):
    return zip(
        traj.gt, traj.concurrence, traj.linear_entropy, traj.bell_max, traj.purity
    )


def _run_sweep_to_csv(cfg: RunConfig, command: str):
    p = cfg.system_params()
    traj = trajectory.sweep(p, cfg.gt_max, cfg.grid_points(), cfg.source)
    meta = {
        "command": command,
        "delta_over_g": _fmt(cfg.delta_over_g),
        "lambda": _fmt(cfg.lambda_),
        "gamma_times_g": _fmt(cfg.gamma_times_g),
        "gt_max": _fmt(cfg.gt_max),
        "n_steps": cfg.grid_points(),
        "n_max": cfg.n_max,
        "source": cfg.source,
    }
    _write_csv(cfg.output, meta, TRAJECTORY_HEADER, _trajectory_rows(traj), cfg.timestamp)


def cmd_evolve(args) -> int:
    cfg = RunConfig(
        delta_over_g=args.delta,
        lambda_=args.lambda_,
        gamma_times_g=args.gamma,
        gt_max=args.gt_max,
        n_steps=args.n_steps,
        n_max=args.n_max,
        source=args.source,
        output=args.output,
        timestamp=not args.no_timestamp,
    )
    _run_sweep_to_csv(cfg, "evolve")
    return 0


def _curve_for(kind: str, n_points: int, samples: int, seed: int) -> frontier.FrontierCurve:
    if kind == frontier.WERNER:
        return frontier.werner_curve(n_points)
    if kind == frontier.MEMS_CM:
        return frontier.mems_curve(n_points)
    if kind == frontier.BELL_FRONTIER:
        return frontier.bell_frontier(n_points=n_points, samples=samples, seed=seed)
    raise ValueError(f"unknown frontier kind {kind!r}")


def cmd_figure(args) -> int:
    if args.tag not in FIGURE_PRESETS:
        raise ValueError(
            f"unknown figure tag {args.tag!r}; known: {sorted(FIGURE_PRESETS)}"
        )
    preset = FIGURE_PRESETS[args.tag]
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    cfg = RunConfig(
        delta_over_g=preset["delta"],
        lambda_=preset["lambda_"],
        gamma_times_g=preset["gamma"],
        gt_max=preset["gt_max"],
        output=str(outdir / f"figure{args.tag}_trajectory.csv"),
        timestamp=not args.no_timestamp,
    )
    _run_sweep_to_csv(cfg, f"figure {args.tag}")
    for kind in preset["curves"]:
        curve = _curve_for(kind, args.n_points, args.samples, args.seed)
        meta = {
            "command": f"figure {args.tag}",
            "kind": kind,
            "n_points": args.n_points,
        }
        if kind == frontier.BELL_FRONTIER:
            meta["samples"] = args.samples
            meta["seed"] = args.seed
        _write_csv(
            str(outdir / f"figure{args.tag}_{kind}.csv"),
            meta,
            FRONTIER_HEADER,
            curve.points,
            not args.no_timestamp,
        )
    return 0


def cmd_frontier(args) -> int:
    curve = _curve_for(args.kind, args.n_points, args.samples, args.seed)
    meta = {"command": "frontier", "kind": args.kind, "n_points": args.n_points}
    if args.kind == frontier.BELL_FRONTIER:
        meta["samples"] = args.samples
        meta["seed"] = args.seed
    _write_csv(args.output, meta, FRONTIER_HEADER, curve.points, not args.no_timestamp)
    return 0


def cmd_recurrences(args) -> int:
    p = SystemParams(g=1.0, delta=args.delta, lambda_=1.0, n_max=args.n_max)
    k, gt_k, c_k = analytic.recurrence_concurrences(p, args.k_max)
    report = frontier.classify_ratio(p, tol=args.tol, q_max=args.q_max)
    meta = {
        "command": "recurrences",
        "delta_over_g": _fmt(args.delta),
        "k_max": args.k_max,
        "ratio_delta_over_omega": _fmt(report.ratio),
        "classification": report.classification,
        "tol": _fmt(report.tol),
        "q_max": report.q_max,
        "best_q": report.best_q if report.best_q is not None else "none",
        "convergents": ";".join(f"{pq}/{q}" for pq, q in report.convergents[:12]),
    }
    _write_csv(
        args.output, meta, RECURRENCE_HEADER, zip(k, gt_k, c_k), not args.no_timestamp
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityent",
        description="Entanglement dynamics of two atoms in a vacuum cavity",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--output", "-o", default="-", help="CSV path ('-' = stdout)")
        sp.add_argument(
            "--no-timestamp",
            action="store_true",
            help="omit the generated-at metadata line (reproducible output)",
        )

    ev = sub.add_parser("evolve", help="sweep trajectory metrics over time")
    ev.add_argument("--delta", type=float, default=0.0, help="detuning Delta/g")
    ev.add_argument("--lambda", dest="lambda_", type=float, default=1.0,
                    help="initial excited population of atom 1")
    ev.add_argument("--gamma", type=float, default=0.0, help="dephasing rate gamma*g")
    ev.add_argument("--gt-max", dest="gt_max", type=float, default=50.0)
    ev.add_argument("--n-steps", dest="n_steps", type=int, default=None)
    ev.add_argument("--n-max", dest="n_max", type=int, default=1, help="cavity Fock cutoff")
    ev.add_argument("--source", choices=trajectory.SOURCES, default=trajectory.ANALYTIC)
    ev.add_argument("--config", default=None, help="key=value config file")
    add_common(ev)
    ev.set_defaults(func=cmd_evolve, subparser=ev)

    fig = sub.add_parser("figure", help="emit the CSV bundle for a paper figure")
    fig.add_argument("tag", help="figure tag, e.g. 1a, 2c, 3b, 4a")
    fig.add_argument("--output-dir", default=".", help="directory for the CSV bundle")
    fig.add_argument("--n-points", type=int, default=257, help="curve sample count")
    fig.add_argument("--samples", type=int, default=100_000,
                     help="random samples for the Bell frontier")
    fig.add_argument("--seed", type=int, default=0)
    fig.add_argument("--no-timestamp", action="store_true")
    fig.set_defaults(func=cmd_figure)

    fr = sub.add_parser("frontier", help="emit a reference frontier curve")
    fr.add_argument("--kind", choices=(frontier.WERNER, frontier.MEMS_CM, frontier.BELL_FRONTIER),
                    required=True)
    fr.add_argument("--n-points", type=int, default=257)
    fr.add_argument("--samples", type=int, default=100_000)
    fr.add_argument("--seed", type=int, default=0)
    add_common(fr)
    fr.set_defaults(func=cmd_frontier)

    rec = sub.add_parser("recurrences", help="pure-state recurrence series")
    rec.add_argument("--delta", type=float, default=0.0, help="detuning Delta/g")
    rec.add_argument("--k-max", dest="k_max", type=int, default=100)
    rec.add_argument("--n-max", dest="n_max", type=int, default=1)
    rec.add_argument("--tol", type=float, default=1e-6,
                     help="rational-approximation tolerance for Delta/Omega")
    rec.add_argument("--q-max", dest="q_max", type=int, default=1000)
    add_common(rec)
    rec.set_defaults(func=cmd_recurrences)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            _apply_config(args, args.subparser)
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
