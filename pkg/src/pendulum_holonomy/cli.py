"""Command line front end.

Subcommands ``holonomy``, ``transport``, ``pendulum`` and ``sweep`` run the
library computations; ``replay`` re-executes a run from the manifest embedded
in one of its JSON reports, and ``schema`` prints the JSON schema of a report.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 pendulum too
slow compared with the rotation rate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from importlib import resources

import numpy as np

from . import __version__
from .geometry import PoleProximity, SurfaceOfRevolution
from .numerics import IntegrationError, IntegratorSpec
from .pendulum import (
    BETA_MODES,
    DEFAULT_ALPHA,
    BetaAlphaSeparationViolated,
    DegenerateTrace,
    PendulumConfig,
    compare_with_holonomy,
    effective_beta,
    oscillation_field,
    simulate,
)
from .transport import (
    TWO_PI,
    holonomy_closed,
    holonomy_numeric,
    parallel_transport,
    parallelism_residual,
    principal_angle,
)

SCHEMA_VERSION = "1.0.0"
COMMANDS = ("holonomy", "transport", "pendulum", "sweep")
MAX_GRID = 10_000

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_SEPARATION = 0, 2, 3, 4


class UsageError(ValueError):
    pass


# -- formatting ----------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _angle(x: float, degrees: bool) -> str:
    return _fmt(math.degrees(x)) + " deg" if degrees else _fmt(x)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    vals = tuple(float(p) for p in parts)
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("components must be finite")
    return vals


def _parse_grid(text: str) -> list[float]:
    """``"v1,v2,..."`` or ``"start:stop:num"`` (inclusive linspace)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid range must be start:stop:num, got {text!r}")
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        if num < 1:
            raise UsageError("grid size must be >= 1")
        return [float(v) for v in np.linspace(start, stop, num)]
    return [float(v) for v in text.split(",")]


# -- manifest and reports --------------------------------------------------------


def _spec_from(args) -> IntegratorSpec:
    return IntegratorSpec.adaptive(args.tol)


def _latitude(args, value=None) -> float:
    lat = args.lat if value is None else value
    return math.radians(lat) if args.degrees else lat


def _manifest(args, timestamp: str) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    return {
        "command": args.command,
        "parameters": params,
        "version": __version__,
        "integrator": _spec_from(args).as_dict(),
        "timestamp": timestamp,
    }


def _report(args, timestamp, result) -> dict:
    return {"schema": SCHEMA_VERSION, "manifest": _manifest(args, timestamp), "result": result}


def _emit(args, report: dict, table: str, primary_to_out: bool = True):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n" if args.json else table
    if primary_to_out and args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------------


def cmd_holonomy(args, timestamp):
    surface = SurfaceOfRevolution(args.a, args.b)
    rep = holonomy_numeric(surface.parallel(_latitude(args)), _spec_from(args))
    result = rep.as_dict()
    d = args.degrees
    table = "\n".join(
        [
            f"surface          a={_fmt(rep.a)} b={_fmt(rep.b)}",
            f"latitude         {_angle(rep.theta0, d)}",
            f"closed_form      {_angle(rep.closed_form, d)}",
            f"numeric          {_angle(rep.numeric, d)}",
            f"angle_integral   {_angle(rep.angle_integral, d)}",
            f"principal        {_angle(rep.principal, d)} (winding {rep.winding})",
            f"max_discrepancy  {_fmt(rep.max_discrepancy)}",
        ]
    ) + "\n"
    _emit(args, _report(args, timestamp, result), table)
    return result


def cmd_transport(args, timestamp):
    surface = SurfaceOfRevolution(args.a, args.b)
    circle = surface.parallel(_latitude(args))
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    tr = parallel_transport(circle, args.v, spec=_spec_from(args), samples=args.samples)
    rows = np.column_stack([tr.t, tr.field.v1, tr.field.v2, tr.phi, tr.norm])
    if args.out:
        _write_text(args.out, _csv_text(["t", "V1", "V2", "phi", "norm"], rows))
    v1, v2 = tr.final
    result = {
        "theta0": circle.theta0,
        "a": surface.a,
        "b": surface.b,
        "v0": [float(tr.field.v1[0]), float(tr.field.v2[0])],
        "final": [v1, v2],
        "final_angle": tr.rotation,
        "final_angle_principal": principal_angle(tr.rotation),
        "phi_initial": float(tr.phi[0]),
        "phi_final": float(tr.phi[-1]),
        "holonomy_closed": holonomy_closed(surface, circle.theta0),
        "norm_initial": float(tr.norm[0]),
        "norm_max_deviation": float(np.max(np.abs(tr.norm - tr.norm[0]))),
        "samples": int(tr.t.size),
        "trace_csv": args.out,
    }
    d = args.degrees
    table = "\n".join(
        [
            f"final (V1, V2)     {_fmt(v1)}, {_fmt(v2)}",
            f"final_angle        {_angle(result['final_angle'], d)}",
            f"phi                {_angle(result['phi_initial'], d)} -> {_angle(result['phi_final'], d)}",
            f"holonomy_closed    {_angle(result['holonomy_closed'], d)}",
            f"norm deviation     {_fmt(result['norm_max_deviation'])}",
        ]
    ) + "\n"
    _emit(args, _report(args, timestamp, result), table, primary_to_out=False)
    return result


def cmd_pendulum(args, timestamp):
    surface = SurfaceOfRevolution(args.a, args.b)
    config = PendulumConfig(surface, _latitude(args), args.alpha, args.mode, tuple(args.plane))
    spec = _spec_from(args)
    trace = None
    if args.method == "ode" or args.trace:
        trace = simulate(config, (0.0, TWO_PI), spec)
    if args.trace:
        _write_text(args.trace, _csv_text(["t", "x", "y", "xdot", "ydot"], trace.columns()))
    rep = compare_with_holonomy(config, args.method, spec, trace=trace if args.method == "ode" else None)
    result = rep.as_dict()
    result["trace_csv"] = args.trace
    d = args.degrees
    table = "\n".join(
        [
            f"beta ({rep.beta_mode})   {_fmt(rep.beta_used)}",
            f"plane_rotation       {_angle(rep.plane_rotation, d)}",
            f"precession_per_loop  {_angle(rep.precession_per_loop, d)}",
            f"holonomy_closed      {_angle(rep.holonomy_closed, d)}",
            f"difference           {_angle(rep.difference, d)}",
            f"residual_sup         {_fmt(rep.residual_sup)}",
        ]
    ) + "\n"
    _emit(args, _report(args, timestamp, result), table)
    return result


SWEEP_COLUMNS = [
    "theta0",
    "a",
    "b",
    "holonomy_closed",
    "holonomy_numeric",
    "precession_literal",
    "precession_projected",
    "residual_sup",
]


def sweep_row(theta0: float, a: float, b: float, tol: float, samples: int) -> list[float]:
    """One row of the sweep table."""
    surface = SurfaceOfRevolution(a, b)
    circle = surface.parallel(theta0)
    rep = holonomy_numeric(circle, IntegratorSpec.adaptive(tol))
    config = PendulumConfig(surface, theta0, DEFAULT_ALPHA, "literal")
    res = parallelism_residual(circle, oscillation_field(config, samples))
    return [
        theta0,
        a,
        b,
        rep.closed_form,
        rep.numeric,
        TWO_PI * effective_beta(surface, theta0, "literal"),
        TWO_PI * effective_beta(surface, theta0, "projected"),
        res.sup_norm,
    ]


def _sweep_task(job):
    return sweep_row(*job)


def cmd_sweep(args, timestamp):
    lats = [_latitude(args, v) for v in _parse_grid(args.lat_grid)] if args.lat_grid else [_latitude(args)]
    a_vals = _parse_grid(args.a_grid) if args.a_grid else [args.a]
    b_vals = _parse_grid(args.b_grid) if args.b_grid else [args.b]
    n = len(lats) * len(a_vals) * len(b_vals)
    if n > MAX_GRID:
        raise UsageError(f"sweep has {n} points, limit is {MAX_GRID}")
    if args.samples < 256:
        raise UsageError("--samples must be >= 256 for the residual")
    jobs = [(th, a, b, args.tol, args.samples) for th in lats for a in a_vals for b in b_vals]
    for th, a, b, *_ in jobs:
        SurfaceOfRevolution(a, b).parallel(th)  # validate before spawning workers
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_sweep_task, jobs, chunksize=max(1, len(jobs) // (4 * args.workers))))
    else:
        rows = [_sweep_task(j) for j in jobs]
    text = _csv_text(SWEEP_COLUMNS, rows)
    result = {"rows": len(rows), "columns": SWEEP_COLUMNS, "csv": args.out}
    if args.out:
        _write_text(args.out, text)
        if args.json:
            sys.stdout.write(json.dumps(_report(args, timestamp, result), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return result


def cmd_schema(args, timestamp):
    sys.stdout.write(load_schema(args.name_) + "\n")


def load_schema(command: str) -> str:
    if command not in COMMANDS:
        raise UsageError(f"no schema for {command!r}")
    return resources.files(__package__).joinpath("schemas", f"{command}.schema.json").read_text("utf-8")


def cmd_replay(args, timestamp):
    with open(args.report, encoding="utf-8") as fh:
        report = json.load(fh)
    manifest = report["manifest"]
    if manifest.get("version") != __version__:
        sys.stderr.write(
            f"warning: report written by version {manifest.get('version')}, running {__version__}\n"
        )
    params = dict(manifest["parameters"])
    params["command"] = manifest["command"]
    ns = argparse.Namespace(**params)
    ns.func = HANDLERS[ns.command]
    return ns.func(ns, manifest["timestamp"])


HANDLERS = {
    "holonomy": cmd_holonomy,
    "transport": cmd_transport,
    "pendulum": cmd_pendulum,
    "sweep": cmd_sweep,
}


# -- parser ----------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    # a fresh parent per subcommand: set_defaults on a child mutates shared actions
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=1.0, help="equatorial semiaxis (default 1)")
    common.add_argument("--b", type=float, default=1.0, help="polar semiaxis (default 1)")
    common.add_argument("--lat", type=float, default=0.0, help="latitude parameter theta0 (radians)")
    common.add_argument("--degrees", action="store_true", help="latitudes in degrees; angles displayed in degrees")
    common.add_argument("--tol", type=float, default=1e-10, help="RK45 relative and absolute tolerance")
    common.add_argument("--samples", type=int, default=257, help="output samples (transport) / field samples (sweep)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", default=None, help="output file (see subcommand help)")
    return common


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(
        prog="pendulum-holonomy",
        description="Holonomy of parallels and Foucault pendulum precession on spheres and ellipsoids.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("holonomy", parents=[_common_flags()], help="holonomy of a parallel (--out: report file)")
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("transport", parents=[_common_flags()], help="parallel transport (--out: CSV trace)")
    p.add_argument("--v", type=_parse_pair, default=None, help="initial components V1,V2 (default: unit tangent)")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("pendulum", parents=[_common_flags()], help="pendulum precession vs holonomy (--out: report file)")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="pendulum pulse (default 300)")
    p.add_argument("--mode", choices=BETA_MODES, default="literal", help="rotation-rate model on the ellipsoid")
    p.add_argument("--method", choices=("closed", "ode"), default="closed")
    p.add_argument("--plane", type=_parse_pair, default=(1.0, 0.0), help="initial plane A,B in (E1, E2)")
    p.add_argument("--trace", default=None, help="write simulated trace CSV here")
    p.set_defaults(func=cmd_pendulum)

    p = sub.add_parser("sweep", parents=[_common_flags()], help="latitude/semiaxis sweep (--out: CSV table)")
    p.add_argument("--lat-grid", default=None, help="latitudes: v1,v2,... or start:stop:num")
    p.add_argument("--a-grid", default=None, help="equatorial semiaxes: v1,v2,... or start:stop:num")
    p.add_argument("--b-grid", default=None, help="polar semiaxes: v1,v2,... or start:stop:num")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep, samples=4096)

    p = sub.add_parser("replay", help="re-run a command from a JSON report")
    p.add_argument("report")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("schema", help="print the JSON schema of a report")
    p.add_argument("name_", metavar="command", choices=COMMANDS)
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    timestamp = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    try:
        if args.command in HANDLERS and not 0 < args.tol <= 1e-2:
            raise UsageError("--tol must lie in (0, 1e-2]")
        args.func(args, timestamp)
    except BetaAlphaSeparationViolated as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEPARATION
    except (IntegrationError, DegenerateTrace) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (UsageError, PoleProximity, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
