"""Command-line interface.

Four subcommands:

  simplex    build one regular simplex and print its JSON document
  orbit      construct and verify the closed orbit for one cell
  verify     sweep an (n, edge) grid of cells and gate on tolerances
  simulate   run the billiard flow and emit bounce points as CSV

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 root-solver
failure, 4 non-smooth trajectory hit (corner or grazing).

JSON goes to stdout (or --json/--report FILE); floats carry 17 significant
digits by default so documents round-trip bit for bit.  CSV uses commas,
'.' decimal marks and '\\n' line ends, with a header row.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import flow as flow_mod
from . import orbit as orbit_mod
from . import report as report_mod
from . import simplex as simplex_mod
from . import weights as weights_mod
from .flow import NonSmoothHitError
from .geometry import HPoint, TangentVec, mink_inner
from .weights import RootBracketError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_NONSMOOTH = 4


@dataclass(frozen=True)
class RunConfig:
    """Parsed command options in one place."""

    command: str
    dims: tuple[int, ...]
    edges: tuple[float, ...]
    precision: int
    tol: float | None = None
    steps: int = 0
    json_path: str | None = None
    csv_path: str | None = None
    report_path: str | None = None
    disk_path: str | None = None
    start_coords: tuple[float, ...] | None = None
    dir_coords: tuple[float, ...] | None = None
    perturb: float = 0.0
    seed: int = 0
    workers: int | None = None

    @property
    def dim(self) -> int:
        return self.dims[0]

    @property
    def edge(self) -> float:
        return self.edges[0]


def parse_dims(spec: str) -> tuple[int, ...]:
    """Dimension lists: '3', '2..5', '2,4,7' or mixtures thereof."""
    out: list[int] = []
    for item in spec.split(","):
        item = item.strip()
        if ".." in item:
            lo_s, hi_s = item.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"empty dimension range {item!r}")
            out.extend(range(lo, hi + 1))
        elif item:
            out.append(int(item))
    if not out:
        raise ValueError(f"no dimensions in {spec!r}")
    return tuple(out)


def parse_floats(spec: str) -> tuple[float, ...]:
    out = tuple(float(x) for x in spec.split(",") if x.strip())
    if not out:
        raise ValueError(f"no values in {spec!r}")
    return out


def _resolve_edges(edges, cosh_edges) -> tuple[float, ...]:
    """Edge lengths, preferring --cosh-edge values when both forms are given."""
    if cosh_edges is not None:
        vals = []
        for c in cosh_edges:
            if c <= 1.0:
                raise ValueError(f"cosh of a positive edge must exceed 1, got {c}")
            vals.append(math.acosh(c))
        return tuple(vals)
    if edges is None:
        raise ValueError("need --edge or --cosh-edge")
    for a in edges:
        if a <= 0.0:
            raise ValueError(f"edge length must be positive, got {a}")
    return tuple(edges)


def _emit_json(doc, path: str | None, precision: int) -> None:
    text = json.dumps(report_mod.jsonable(doc, precision), indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _emit_csv(header, rows, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            report_mod.write_csv(fh, header, rows)
    else:
        report_mod.write_csv(sys.stdout, header, rows)


def _tolerances(cfg: RunConfig) -> report_mod.Tolerances:
    if cfg.tol is not None:
        return report_mod.Tolerances.uniform(cfg.tol)
    return report_mod.Tolerances()


def cmd_simplex(cfg: RunConfig) -> int:
    s = simplex_mod.build(cfg.dim, cfg.edge)
    _emit_json(report_mod.simplex_document(s), cfg.json_path, cfg.precision)
    return EXIT_OK


def cmd_orbit(cfg: RunConfig) -> int:
    s = simplex_mod.build(cfg.dim, cfg.edge)
    seq = weights_mod.build_sequence(cfg.dim, cfg.edge)
    doc, passed = report_mod.orbit_document(s, seq, _tolerances(cfg))
    _emit_json(doc, cfg.json_path, cfg.precision)
    if cfg.disk_path:
        orb = orbit_mod.construct_orbit(s, seq)
        header, rows = report_mod.orbit_rows(s, orb, cfg.precision)
        _emit_csv(header, rows, cfg.disk_path)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_verify(cfg: RunConfig) -> int:
    rep = report_mod.run_sweep(cfg.dims, cfg.edges, _tolerances(cfg), cfg.workers)
    doc = report_mod.sweep_document(rep)
    _emit_json(doc, cfg.report_path, cfg.precision)
    for cell in rep.cells:
        status = "pass" if cell.passed else "FAIL"
        print(f"cell n={cell.n} edge={cell.edge:g}: {status}", file=sys.stderr)
    verdict = "pass" if rep.passed else "FAIL"
    print(f"sweep over {len(rep.cells)} cells: {verdict}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def _perturbed(state: flow_mod.FlowState, s: simplex_mod.RegularSimplex,
               eps: float, seed: int) -> flow_mod.FlowState:
    """Rotate the direction by angle eps inside the simplex slice."""
    rng = np.random.default_rng(seed)
    x = state.position.coords
    d = state.direction
    ones = s.slice_vector()
    w = rng.standard_normal(x.shape[0])
    w -= (mink_inner(w, ones) / mink_inner(ones, ones)) * ones
    w += mink_inner(x, w) * x
    w -= mink_inner(d, w) * d
    norm = math.sqrt(mink_inner(w, w))
    if norm < 1e-12:
        raise ValueError("degenerate perturbation direction; change the seed")
    w /= norm
    return flow_mod.FlowState(
        state.position, math.cos(eps) * d + math.sin(eps) * w, state.last_facet
    )


def cmd_simulate(cfg: RunConfig) -> int:
    s = simplex_mod.build(cfg.dim, cfg.edge)
    if cfg.start_coords is not None or cfg.dir_coords is not None:
        if cfg.start_coords is None or cfg.dir_coords is None:
            raise ValueError("--start-coords and --dir-coords must be given together")
        p = HPoint(np.array(cfg.start_coords))
        if abs(simplex_mod.slice_defect(s, p)) > 1e-9:
            raise ValueError("start point is outside the simplex slice")
        tv = TangentVec.from_raw(p, np.array(cfg.dir_coords))
        if abs(mink_inner(tv.direction, s.slice_vector())) > 1e-9:
            raise ValueError("direction points out of the simplex slice")
        state = flow_mod.FlowState(p, tv.direction)
    else:
        seq = weights_mod.build_sequence(cfg.dim, cfg.edge)
        orb = orbit_mod.construct_orbit(s, seq)
        state = flow_mod.launch_state(s, orb)
    if cfg.perturb:
        state = _perturbed(state, s, cfg.perturb, cfg.seed)
    traj = flow_mod.iterate(s, state, cfg.steps)
    header, rows = report_mod.trajectory_rows(s, traj, cfg.precision)
    _emit_csv(header, rows, cfg.csv_path)
    print(
        f"{len(traj.bounces)} bounces, total length {traj.total_length:.6g}, "
        f"max invariant drift {traj.max_drift:.3e}",
        file=sys.stderr,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypbilliards",
        description="Closed billiard orbits in regular hyperbolic simplices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cell_args(p, plural=False):
        if plural:
            p.add_argument("--dims", default="2..8",
                           help="dimensions, e.g. '3', '2..5', '2,4,7' (default 2..8)")
            p.add_argument("--edges", default="0.5,1,2",
                           help="edge lengths, comma separated (default 0.5,1,2)")
            p.add_argument("--cosh-edges", default=None,
                           help="edge cosh values; takes precedence over --edges")
        else:
            p.add_argument("--dim", type=int, required=True, help="simplex dimension n")
            p.add_argument("--edge", type=float, default=None, help="edge length a")
            p.add_argument("--cosh-edge", type=float, default=None,
                           help="cosh of the edge; takes precedence over --edge")
        p.add_argument("--precision", type=int, default=17,
                       help="significant digits for serialized floats (default 17)")

    p_simplex = sub.add_parser("simplex", help="build one simplex, print JSON")
    add_cell_args(p_simplex)
    p_simplex.add_argument("--json", dest="json_path", default=None, help="write JSON here")

    p_orbit = sub.add_parser("orbit", help="construct and verify the closed orbit")
    add_cell_args(p_orbit)
    p_orbit.add_argument("--json", dest="json_path", default=None, help="write JSON here")
    p_orbit.add_argument("--disk-coords", dest="disk_path", default=None,
                         help="write bounce points as CSV in disk coordinates")
    p_orbit.add_argument("--tol", type=float, default=None,
                         help="override all verification tolerances")

    p_verify = sub.add_parser("verify", help="sweep a grid of cells")
    add_cell_args(p_verify, plural=True)
    p_verify.add_argument("--tol", type=float, default=None,
                          help="override all verification tolerances")
    p_verify.add_argument("--report", dest="report_path", default=None,
                          help="write the JSON report here instead of stdout")
    p_verify.add_argument("--workers", type=int, default=None,
                          help="thread count for concurrent cells")

    p_sim = sub.add_parser("simulate", help="run the billiard flow, emit CSV")
    add_cell_args(p_sim)
    p_sim.add_argument("--steps", type=int, default=100, help="number of bounces")
    p_sim.add_argument("--csv", dest="csv_path", default=None, help="write CSV here")
    p_sim.add_argument("--start-coords", default=None,
                       help="ambient start coordinates, comma separated (default: orbit start)")
    p_sim.add_argument("--dir-coords", default=None,
                       help="ambient direction, projected and normalized")
    p_sim.add_argument("--perturb", type=float, default=0.0,
                       help="rotate the launch direction by this angle (radians)")
    p_sim.add_argument("--seed", type=int, default=0, help="perturbation seed")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "verify":
        dims = parse_dims(args.dims)
        cosh = parse_floats(args.cosh_edges) if args.cosh_edges else None
        edges = _resolve_edges(parse_floats(args.edges), cosh)
    else:
        if args.dim < 1:
            raise ValueError(f"dimension must be at least 1, got {args.dim}")
        dims = (args.dim,)
        edges = _resolve_edges(
            None if args.edge is None else (args.edge,),
            None if args.cosh_edge is None else (args.cosh_edge,),
        )
    if args.command == "verify" and any(n < 2 for n in dims):
        raise ValueError("orbit verification needs n >= 2 in every cell")
    if not 1 <= args.precision <= 17:
        raise ValueError(f"precision must be in 1..17, got {args.precision}")

    def coords(text):
        return None if text is None else tuple(float(x) for x in text.split(","))

    return RunConfig(
        command=args.command,
        dims=dims,
        edges=edges,
        precision=args.precision,
        tol=getattr(args, "tol", None),
        steps=getattr(args, "steps", 0),
        json_path=getattr(args, "json_path", None),
        csv_path=getattr(args, "csv_path", None),
        report_path=getattr(args, "report_path", None),
        disk_path=getattr(args, "disk_path", None),
        start_coords=coords(getattr(args, "start_coords", None)),
        dir_coords=coords(getattr(args, "dir_coords", None)),
        perturb=getattr(args, "perturb", 0.0),
        seed=getattr(args, "seed", 0),
        workers=getattr(args, "workers", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code) if err.code is not None else EXIT_OK
    try:
        cfg = config_from_args(args)
        handler = {
            "simplex": cmd_simplex,
            "orbit": cmd_orbit,
            "verify": cmd_verify,
            "simulate": cmd_simulate,
        }[cfg.command]
        return handler(cfg)
    except RootBracketError as err:
        print(f"solver failure: {err}", file=sys.stderr)
        return EXIT_SOLVER
    except NonSmoothHitError as err:
        print(f"non-smooth trajectory: {err}", file=sys.stderr)
        return EXIT_NONSMOOTH
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
