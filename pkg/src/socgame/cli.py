"""Command line front end.

Subcommands: check, equilibria, simulate, sweep, basins, portrait.
Parameters come from a flat key=value file (--params) with --set overrides.
Exit codes: 0 success, 1 input error, 2 inadmissible parameters
(dominated strategy), 3 degenerate boundary, 4 integration failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .basins import estimate_basins
from .classify import classify_global
from .dynamics import (
    IntegrationError,
    IntegratorConfig,
    _decimal,
    integrate,
    match_attractor,
)
from .model import (
    DEFAULT_TOL,
    DegenerateParameterError,
    InvalidParameterError,
    Params,
    SimplexState,
    dominance_relations,
    nash_vertices,
    validate,
)
from .portrait import render_portrait

_PARAM_KEYS = ("alpha", "beta", "gamma", "delta", "epsilon", "eta")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; 2 means "inadmissible
    # parameters" here, so route usage problems to the input-error code
    def error(self, message: str):
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, assembled from the command line."""

    command: str
    params: Params
    tol: float
    seed: int
    out: Path | None
    jobs: int
    sweep_axes: tuple[SweepAxis, ...] = ()
    x0: SimplexState | None = None
    samples: int = 1000
    method: str = "rk45"
    max_time: float = 1000.0


def _read_params_file(path: str) -> dict[str, float]:
    text = Path(path).read_text()
    out: dict[str, float] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected key=value, got {raw!r}")
        key, val = line.split("=", 1)
        key = key.strip()
        try:
            out[key] = float(val.strip())
        except ValueError:
            raise ValueError(f"{path}:{ln}: not a number: {val.strip()!r}") from None
    return out


def _parse_set(sets: Sequence[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for item in sets:
        if "=" not in item:
            raise ValueError(f"--set expects KEY=VAL, got {item!r}")
        key, val = item.split("=", 1)
        key = key.strip()
        if key not in _PARAM_KEYS:
            raise ValueError(f"--set: unknown parameter {key!r}")
        out[key] = float(val)
    return out


def _parse_x0(text: str) -> SimplexState:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"--x0 expects four comma-separated shares, got {text!r}")
    return SimplexState(*(float(v) for v in parts))


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError(f"--sweep expects NAME:MIN:MAX:STEPS, got {text!r}")
    name, lo, hi, steps = parts
    if name not in _PARAM_KEYS:
        raise ValueError(f"--sweep: unknown parameter {name!r}")
    n = int(steps)
    if n < 2:
        raise ValueError("--sweep: STEPS must be at least 2")
    return SweepAxis(name=name, lo=float(lo), hi=float(hi), steps=n)


def _json(doc: dict) -> str:
    # canonical form: stable key order, so reparse+redump is byte-identical
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_check(rc: RunConfig) -> int:
    p = rc.params
    report = validate(p, rc.tol)
    doc: dict = {"params": p.as_dict(), "validation": report.as_dict()}
    code = 0
    if report.positivity_ok:
        doc["dominance"] = [list(pair) for pair in dominance_relations(p)]
    if report.degenerate_quantities:
        code = 3
    elif not (report.positivity_ok and report.nondominance_ok):
        code = 2
    else:
        try:
            doc["nash"] = nash_vertices(p, rc.tol)
        except DegenerateParameterError as e:
            doc["nash"] = None
            doc["validation"]["messages"].append(str(e))
            code = 3
    sys.stdout.write(_json(doc))
    return code


def cmd_equilibria(rc: RunConfig) -> int:
    p = rc.params
    vrep = validate(p, rc.tol)
    if vrep.degenerate_quantities or not (vrep.positivity_ok and vrep.nondominance_ok):
        sys.stdout.write(_json({"params": p.as_dict(), "validation": vrep.as_dict()}))
        return 3 if vrep.degenerate_quantities else 2
    report = classify_global(p, rc.tol, strict=False)
    text = _json(report.as_dict())
    sys.stdout.write(text)
    if rc.out is not None:
        rc.out.mkdir(parents=True, exist_ok=True)
        (rc.out / "equilibria.json").write_text(text)
    return 3 if report.degenerate else 0


def cmd_simulate(rc: RunConfig) -> int:
    p = rc.params
    report = classify_global(p, rc.tol)  # raises on inadmissible/degenerate input
    cfg = IntegratorConfig(method=rc.method, max_time=rc.max_time)
    traj = integrate(rc.x0, p, cfg)

    out_dir = rc.out if rc.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "trajectory.csv"
    with open(csv_path, "w") as fh:
        traj.write_csv(fh)

    print(f"wrote {csv_path}")
    print(f"verdict: {traj.verdict} at t={_decimal(traj.times[-1])} "
          f"(terminal velocity {traj.terminal_velocity:.3e})")
    if traj.verdict == "step-failure":
        print("unresolved")
        return 4
    hit = match_attractor(traj.final_state, report.global_attractors)
    print(hit.label if hit is not None else "unresolved")
    return 0


def cmd_sweep(rc: RunConfig) -> int:
    axes = rc.sweep_axes
    grids = [np.linspace(a.lo, a.hi, a.steps) for a in axes]
    names = [a.name for a in axes]
    header = names + ["valid", "degenerate", "branch",
                      "fig_S_N", "fig_S_O", "fig_S_H", "fig_S_P", "n_attractors"]
    lines = [",".join(header)]
    for combo in itertools.product(*grids):
        p = replace(rc.params, **{n: float(v) for n, v in zip(names, combo)})
        vrep = validate(p, rc.tol)
        degenerate = bool(vrep.degenerate_quantities)
        valid = vrep.positivity_ok and vrep.nondominance_ok
        figs = ["", "", "", ""]
        n_att = ""
        if valid and not degenerate:
            rep = classify_global(p, rc.tol, strict=False)
            degenerate = rep.degenerate
            figs = [e.figure if e is not None else "" for e in rep.edges]
            if not rep.degenerate:
                n_att = str(len(rep.global_attractors))
        row = ([_decimal(float(v)) for v in combo]
               + ["1" if valid else "0", "1" if degenerate else "0", vrep.branch or ""]
               + figs + [n_att])
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if rc.out is not None:
        rc.out.mkdir(parents=True, exist_ok=True)
        (rc.out / "sweep.csv").write_text(text)
    return 0


def cmd_basins(rc: RunConfig) -> int:
    report = estimate_basins(
        rc.params, rc.samples, seed=rc.seed, tol=rc.tol, jobs=rc.jobs,
        cfg=IntegratorConfig(max_time=rc.max_time),
    )
    doc = report.as_dict()
    sys.stdout.write(_json(doc))
    if rc.out is not None:
        rc.out.mkdir(parents=True, exist_ok=True)
        (rc.out / "basins.json").write_text(_json(doc))
        rows = ["label,count,fraction,stderr"]
        for label, c in report.counts:
            rows.append(f"{label},{c},{_decimal(report.fractions[label])},"
                        f"{_decimal(report.stderr[label])}")
        (rc.out / "basins.csv").write_text("\n".join(rows) + "\n")
    return 0


def cmd_portrait(rc: RunConfig) -> int:
    out_dir = rc.out if rc.out is not None else Path(".")
    svg_path, csv_path = render_portrait(rc.params, out_dir, rc.tol)
    print(f"wrote {svg_path}")
    print(f"wrote {csv_path}")
    return 0


_HANDLERS = {
    "check": cmd_check,
    "equilibria": cmd_equilibria,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "basins": cmd_basins,
    "portrait": cmd_portrait,
}


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--params", required=True, metavar="FILE",
                        help="flat key=value file with alpha..eta")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VAL",
                        help="override one parameter (repeatable)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="strict-inequality tolerance")
    common.add_argument("--seed", type=int, default=42, help="RNG seed")
    common.add_argument("--out", default=None, metavar="DIR", help="output directory")
    common.add_argument("--jobs", type=int, default=0,
                        help="worker processes (0 = machine parallelism)")

    parser = _Parser(prog="socgame",
                     description="Equilibria, regimes and basins of the four-strategy "
                                 "online/offline participation game.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common],
                   help="validate parameters, list Nash vertices and dominance")
    sub.add_parser("equilibria", parents=[common],
                   help="classify all faces and the global attractor set")

    sim = sub.add_parser("simulate", parents=[common],
                         help="integrate one trajectory and name its attractor")
    sim.add_argument("--x0", required=True, metavar="X1,X2,X3,X4",
                     help="initial shares, comma separated")
    sim.add_argument("--method", choices=("rk45", "rk4"), default="rk45")
    sim.add_argument("--max-time", type=float, default=1000.0)

    sw = sub.add_parser("sweep", parents=[common],
                        help="classify over a 1D or 2D parameter grid")
    sw.add_argument("--sweep", action="append", required=True,
                    metavar="NAME:MIN:MAX:STEPS", help="grid axis (max twice)")

    ba = sub.add_parser("basins", parents=[common],
                        help="Monte Carlo basin-of-attraction fractions")
    ba.add_argument("--samples", type=int, default=1000)
    ba.add_argument("--max-time", type=float, default=1000.0)

    sub.add_parser("portrait", parents=[common],
                   help="planar-net SVG phase portrait of the boundary faces")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    mapping = _read_params_file(args.params)
    mapping.update(_parse_set(args.set))
    params = Params.from_mapping(mapping)

    axes: tuple[SweepAxis, ...] = ()
    if getattr(args, "sweep", None):
        if len(args.sweep) > 2:
            raise ValueError("--sweep given more than twice; at most 2 axes")
        axes = tuple(_parse_axis(s) for s in args.sweep)

    jobs = args.jobs if args.jobs > 0 else (os.cpu_count() or 1)
    return RunConfig(
        command=args.command,
        params=params,
        tol=args.tol,
        seed=args.seed,
        out=Path(args.out) if args.out is not None else None,
        jobs=jobs,
        sweep_axes=axes,
        x0=_parse_x0(args.x0) if getattr(args, "x0", None) else None,
        samples=getattr(args, "samples", 1000),
        method=getattr(args, "method", "rk45"),
        max_time=getattr(args, "max_time", 1000.0),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        rc = _run_config(args)
        return _HANDLERS[rc.command](rc)
    except DegenerateParameterError as e:
        print(f"degenerate parameters: {e}", file=sys.stderr)
        return 3
    except InvalidParameterError as e:
        print(f"inadmissible parameters: {e}", file=sys.stderr)
        return 2
    except IntegrationError as e:
        print(f"integration failure: {e}", file=sys.stderr)
        return 4
    except (OSError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
