"""Command-line orchestration: simulate / picard / verify / norms.

Every run writes a manifest.json recording the effective configuration, seed,
and tool version.  Numeric output (CSV/JSON) is formatted with shortest
round-trip float representation, so identical config + seed reproduces
byte-identical files; wall-clock timing goes to run.log, which is the one
deliberately non-deterministic output.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time as _time
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import (
    calibrate_energy_constant,
    check_duhamel_estimates,
    check_linear_estimate,
    check_lipschitz_estimates,
    energy,
    mass,
)
from .ensembles import make_rng, random_band_limited_spectrum, random_trajectory
from .evolver import evolve
from .grid import (
    Field,
    NonFiniteError,
    make_grid,
    parse_descriptor,
    sample_function,
    to_field,
    to_spectrum,
)
from .norms import (
    energy_norm,
    l2_norm,
    linf_norm,
    sobolev_norm,
    wiener_norm,
)
from .picard import (
    ConvergenceError,
    measure_contraction,
    picard_solve,
    select_local_time,
)
from .propagator import SimulationParams
from .snapshots import write_snapshot

TIMESERIES_COLUMNS = ["t", "mass", "energy", "e_norm", "wiener", "linf", "l2"]
ESTIMATE_COLUMNS = ["estimate_id", "lhs", "rhs", "margin", "empirical_constant", "witness"]


def _fmt(x) -> str:
    """Shortest round-trip decimal representation."""
    return repr(float(x))


def _write_csv(path: Path, columns: list[str], rows: list[list]) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, (int, float, np.floating)) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _timeseries_row(t: float, f: Field, params: SimulationParams) -> list[float]:
    s = to_spectrum(f)
    return [
        t,
        mass(f),
        energy(f, params),
        energy_norm(s),
        wiener_norm(s),
        linf_norm(f),
        l2_norm(f),
    ]


def _manifest(outdir: Path, args: argparse.Namespace, extra: dict, status: str = "ok",
              reason: str | None = None) -> None:
    m = {
        "tool": "halfwave-lab",
        "version": __version__,
        "command": args.command,
        "status": status,
        "reason": reason,
        "config": {k: v for k, v in vars(args).items() if k not in ("command", "func")},
    }
    m.update(extra)
    _write_json(outdir / "manifest.json", m)


def _setup_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=str, default=None,
                   help="JSON file of option values; explicit flags override it")
    p.add_argument("--grid", type=int, default=64, help="modes per axis (square grid)")
    p.add_argument("--box", type=float, default=10.0, help="half-period of the box")
    p.add_argument("--k", type=int, default=1, help="nonlinearity power p = 2k+1")
    p.add_argument("--mu", type=int, default=1, choices=(1, -1))
    p.add_argument("--init", type=str, default="gaussian:1,1",
                   help="initial data, e.g. gaussian:a,sigma | constant:c | plane_wave:j,m,a")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, required=True, help="output directory")


def _apply_config_file(args: argparse.Namespace, parser: argparse.ArgumentParser,
                       argv: list[str]) -> None:
    if not args.config:
        return
    file_values = json.loads(Path(args.config).read_text())
    explicit = {a.lstrip("-").split("=")[0].replace("-", "_") for a in argv if a.startswith("--")}
    for key, value in file_values.items():
        if key not in vars(args):
            raise ValueError(f"unknown config key {key!r}")
        if key not in explicit:
            setattr(args, key, value)


def _build_problem(args) -> tuple:
    grid = make_grid(args.grid, args.grid, args.box, args.box)
    u0_field = sample_function(grid, parse_descriptor(args.init))
    return grid, u0_field, to_spectrum(u0_field)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    grid, u0_field, u0 = _build_problem(args)
    params = SimulationParams(mu=args.mu, k=args.k, horizon=args.T)
    traj = evolve(u0, params, args.dt, snapshot_every=args.snapshot_every)
    rows = []
    for i, (t, s) in enumerate(traj):
        f = to_field(s)
        rows.append(_timeseries_row(t, f, params))
        if args.snapshots:
            write_snapshot(outdir / f"snap_{i:06d}.bin", t, f)
    _write_csv(outdir / "timeseries.csv", TIMESERIES_COLUMNS, rows)
    _manifest(outdir, args, {
        "grid": {"nx": grid.nx, "ny": grid.ny, "lx": grid.lx, "ly": grid.ly},
        "params": {"mu": params.mu, "k": params.k, "horizon": params.horizon},
        "n_snapshots": len(traj),
    })
    return 0


def cmd_picard(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    grid, u0_field, u0 = _build_problem(args)
    if args.T is not None:
        horizon = args.T
        selection = None
    else:
        r, delta, t_max = select_local_time(
            energy_norm(u0), wiener_norm(u0), args.c, args.k
        )
        horizon = t_max
        selection = {"r": r, "delta": delta, "t_max": t_max, "c": args.c}
    params = SimulationParams(mu=args.mu, k=args.k, horizon=horizon)
    state = picard_solve(
        u0, params, nodes_m=args.nodes, tol=args.tol, max_iter=args.max_iter,
        constant_c=args.c,
    )
    rows = [
        _timeseries_row(t, to_field(s), params) for t, s in state.trajectory()
    ]
    _write_csv(outdir / "timeseries.csv", TIMESERIES_COLUMNS, rows)
    _write_json(outdir / "report.json", {
        "converged": state.converged,
        "iterations": state.iteration_index,
        "last_distance": state.last_distance,
        "distance_history": state.distance_history,
        "contraction_ratios": state.ratios(),
        "radius_r": state.radius_r,
        "delta": state.delta,
        "horizon": horizon,
        "time_selection": selection,
    })
    _manifest(outdir, args, {
        "grid": {"nx": grid.nx, "ny": grid.ny, "lx": grid.lx, "ly": grid.ly},
        "params": {"mu": params.mu, "k": params.k, "horizon": params.horizon},
    })
    return 0


def _estimate_rows(reports) -> list[list]:
    return [[r.estimate_id, r.lhs, r.rhs, r.margin, r.empirical_constant, r.witness]
            for r in reports]


def cmd_verify(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = make_grid(args.grid, args.grid, args.box, args.box)
    params = SimulationParams(mu=args.mu, k=args.k, horizon=args.T)
    rng = make_rng(args.seed)
    nodes = np.linspace(0.0, args.T, args.nodes + 1)
    suites = ["linear", "wiener", "lipschitz"] if args.suite == "all" else [args.suite]
    reports = []
    summary: dict = {"suites": suites, "trials": args.trials}

    for suite in suites:
        if suite == "linear":
            for _ in range(args.trials):
                u0 = random_band_limited_spectrum(grid, rng)
                reports.append(check_linear_estimate(u0, nodes))
        elif suite == "wiener":
            for _ in range(args.trials):
                traj = random_trajectory(grid, args.nodes + 1, rng,
                                         y_target=0.9 * args.r)
                reports.extend(check_duhamel_estimates(
                    list(zip(nodes, traj)), params, args.r,
                    c_energy=args.c))
        elif suite == "lipschitz":
            for _ in range(args.trials):
                u = random_trajectory(grid, args.nodes + 1, rng, y_target=0.9 * args.r)
                v = random_trajectory(grid, args.nodes + 1, rng, y_target=0.9 * args.r)
                reports.extend(check_lipschitz_estimates(
                    list(zip(nodes, u)), list(zip(nodes, v)), params, args.r))
        elif suite == "energy":
            summary["calibration"] = calibrate_energy_constant(
                grid, params, args.nodes, args.trials, args.r, seed=args.seed)
        elif suite == "contraction":
            cal = calibrate_energy_constant(
                grid, params, args.nodes, max(args.trials // 2, 10), args.r,
                seed=args.seed)
            r, delta, t_max = select_local_time(args.r / 6.0, args.r / 6.0,
                                                cal["p95"], args.k)
            cparams = SimulationParams(mu=args.mu, k=args.k, horizon=t_max)
            u0 = random_band_limited_spectrum(grid, rng)
            rep = measure_contraction(u0, cparams, args.nodes, args.trials, r,
                                      seed=args.seed + 1)
            summary["contraction"] = {
                "calibration": cal, "r": r, "t_max": t_max,
                "max_ratio": rep.max_ratio, "mean_ratio": rep.mean_ratio,
            }
        else:
            raise ValueError(f"unknown suite {suite!r}")

    if reports:
        _write_csv(outdir / "estimates.csv", ESTIMATE_COLUMNS, _estimate_rows(reports))
        by_id: dict = {}
        for r in reports:
            d = by_id.setdefault(r.estimate_id, {"count": 0, "min_margin": np.inf,
                                                 "max_empirical_constant": 0.0})
            d["count"] += 1
            d["min_margin"] = min(d["min_margin"], r.margin)
            d["max_empirical_constant"] = max(d["max_empirical_constant"],
                                              r.empirical_constant)
        summary["estimates"] = by_id
        summary["min_margin"] = min(r.margin for r in reports)
    _write_json(outdir / "report.json", summary)
    _manifest(outdir, args, {
        "grid": {"nx": grid.nx, "ny": grid.ny, "lx": grid.lx, "ly": grid.ly},
        "params": {"mu": params.mu, "k": params.k, "horizon": params.horizon},
    })
    return 0


def cmd_norms(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    grid, f, s = _build_problem(args)
    params = SimulationParams(mu=args.mu, k=args.k)
    _write_csv(outdir / "timeseries.csv", TIMESERIES_COLUMNS,
               [_timeseries_row(0.0, f, params)])
    _write_json(outdir / "report.json", {
        "l2": l2_norm(f),
        "linf": linf_norm(f),
        "energy_norm": energy_norm(s),
        "wiener": wiener_norm(s),
        "sobolev_1_0": sobolev_norm(s, 1.0, 0.0),
        "sobolev_0_half": sobolev_norm(s, 0.0, 0.5),
        "mass": mass(f),
        "energy": energy(f, params),
    })
    _manifest(outdir, args, {
        "grid": {"nx": grid.nx, "ny": grid.ny, "lx": grid.lx, "ly": grid.ly},
        "params": {"mu": params.mu, "k": params.k},
    })
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfwave-lab",
        description="Pseudospectral half-wave Schrodinger solver and "
                    "estimate-certification toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="split-step time integration")
    _setup_common(p)
    p.add_argument("--T", type=float, required=True, help="time horizon")
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--snapshot-every", type=int, default=10)
    p.add_argument("--snapshots", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("picard", help="fixed-point solve of the integral equation")
    _setup_common(p)
    p.add_argument("--T", type=float, default=None,
                   help="horizon; omitted = use the existence-time rule")
    p.add_argument("--nodes", type=int, default=64, help="time intervals M")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--c", type=float, default=1.0, help="estimate constant C")
    p.set_defaults(func=cmd_picard)

    p = sub.add_parser("verify", help="numerically certify the a-priori estimates")
    _setup_common(p)
    p.add_argument("--suite", type=str, default="all",
                   choices=("linear", "wiener", "lipschitz", "energy",
                            "contraction", "all"))
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--nodes", type=int, default=16)
    p.add_argument("--T", type=float, default=0.1)
    p.add_argument("--r", type=float, default=1.0, help="ball radius")
    p.add_argument("--c", type=float, default=1.0, help="energy-chain constant")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("norms", help="norm report of an initial condition")
    _setup_common(p)
    p.set_defaults(func=cmd_norms)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config_file(args, parser, argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1

    start = _time.monotonic()
    outdir = Path(args.out)
    try:
        code = args.func(args)
    except (ConvergenceError, NonFiniteError, FloatingPointError) as exc:
        _fail_manifest(outdir, args, "numerical", exc)
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    duration = _time.monotonic() - start
    try:
        (outdir / "run.log").write_text(
            f"command={args.command}\nduration_seconds={duration:.3f}\n"
        )
    except OSError:
        pass
    return code


def _fail_manifest(outdir: Path, args, kind: str, exc: Exception) -> None:
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        _manifest(outdir, args, {}, status="error", reason=f"{kind}: {exc}")
    except OSError:
        pass


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
