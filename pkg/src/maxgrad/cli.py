"""Command-line interface.

Data commands write delimited files (CSV) and small JSON records into an
output directory; the ``report`` command additionally renders matplotlib
figures next to the data.  Every run drops a ``run.json`` sidecar with
the resolved arguments and the list of files written, and nothing in the
outputs depends on wall-clock time, so rerunning a command reproduces
its files byte for byte.

Exit codes: 0 on success, 2 for invalid input (also used by argparse),
3 when a computation fails to converge or degenerates.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .continuum import (DomainProfile, basis_function, check_perimeter_lower_bound,
                        disk_profile, distance_to_set, eigen_check_1d,
                        extinction_time, extreme_check_1d, interval_profile,
                        lshape_profile, perimeter_moment,
                        perimeter_moment_lower_bound, profile_from_csv,
                        rayleigh_quotient_sq, solve_ramp_ode, square_profile,
                        svc_set, variational_time)
from .errors import InputError, MaxgradError, NumericalError
from .graphs import (VertexFunction, WeightedGraph, asymptotic_profile,
                     build_graph, dump_graph_json, eigen_certificate,
                     format_float, gradient_flow, graph_distance, grid_graph,
                     lipschitz_energy, load_graph_json, path_graph,
                     random_connected_graph, shortest_path_count,
                     write_certificate_json, write_trajectory_csv)

__all__ = ["main"]


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

def _out_dir(args) -> str:
    out = args.out or os.environ.get("MAXGRAD_OUTDIR") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _write_run_record(args, outdir: str, outputs: list[str],
                      extra: dict | None = None) -> None:
    record = {
        "command": args.command,
        "version": __version__,
        "arguments": {k: v for k, v in sorted(vars(args).items())
                      if k not in ("func", "command") and v is not None},
        "outputs": sorted(outputs),
    }
    if extra:
        record.update(extra)
    path = os.path.join(outdir, "run.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=1, sort_keys=True, default=str)
        fh.write("\n")


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--path", type=int, metavar="N",
                     help="path graph on N vertices, endpoints constrained")
    src.add_argument("--grid", type=int, nargs=2, metavar=("W", "H"),
                     help="W x H grid graph")
    src.add_argument("--random", type=int, nargs=2, metavar=("N", "EXTRA"),
                     help="random connected graph: N vertices, EXTRA edges "
                          "beyond a spanning tree")
    src.add_argument("--input", metavar="FILE",
                     help="graph JSON file (vertices/edges/boundary)")
    parser.add_argument("--boundary", choices=("ring", "corners"),
                        default="ring", help="grid constraint set")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for --random")


def _build_graph(args) -> tuple[WeightedGraph, dict]:
    if args.path is not None:
        if args.path < 2:
            raise InputError("--path needs at least 2 vertices")
        return path_graph(args.path), {"kind": "path", "n": args.path}
    if args.grid is not None:
        w, h = args.grid
        return (grid_graph(w, h, boundary=args.boundary),
                {"kind": "grid", "width": w, "height": h,
                 "boundary": args.boundary})
    if args.random is not None:
        n, extra = args.random
        return (random_connected_graph(n, extra, seed=args.seed),
                {"kind": "random", "n": n, "extra": extra, "seed": args.seed})
    return load_graph_json(args.input), {"kind": "file", "path": args.input}


def _grid_shape(args) -> tuple[int, int] | None:
    return tuple(args.grid) if getattr(args, "grid", None) else None


def _load_vertex_csv(path: str, graph: WeightedGraph) -> VertexFunction:
    values = np.zeros(graph.vertex_count)
    seen = np.zeros(graph.vertex_count, dtype=bool)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError(f"{path}: empty file")
        for row in reader:
            if not row or not row[0].strip():
                continue
            try:
                i, v = int(row[0]), float(row[1])
            except (ValueError, IndexError) as exc:
                raise InputError(f"{path}: bad row {row!r}") from exc
            if not 0 <= i < graph.vertex_count:
                raise InputError(f"{path}: vertex {i} out of range")
            values[i] = v
            seen[i] = True
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0])
        raise InputError(f"{path}: no value for vertex {missing}")
    return VertexFunction(graph, values)


def _write_vertex_csv(path: str, values, label: str = "value") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", label])
        for i, v in enumerate(values):
            writer.writerow([i, format_float(float(v))])


def _maybe_dump_graph(graph: WeightedGraph, args, outdir: str,
                      outputs: list[str]) -> None:
    if args.input is None:
        path = os.path.join(outdir, "graph.json")
        dump_graph_json(graph, path)
        outputs.append("graph.json")


# ---------------------------------------------------------------------------
# graph commands
# ---------------------------------------------------------------------------

def _cmd_graph_distance(args) -> int:
    graph, meta = _build_graph(args)
    outdir = _out_dir(args)
    field = graph_distance(graph)

    counts = None
    if args.counts:
        counts = [shortest_path_count(graph, field, x)
                  for x in range(graph.vertex_count)]

    out = os.path.join(outdir, "distance.csv")
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "distance"]
                        + (["geodesic_count"] if counts else []))
        for i, v in enumerate(field.values):
            row = [i, format_float(float(v))]
            if counts:
                row.append(counts[i])
            writer.writerow(row)

    outputs = ["distance.csv"]
    _maybe_dump_graph(graph, args, outdir, outputs)
    _write_run_record(args, outdir, outputs, {"graph": meta})
    print(f"distance computed on {graph.vertex_count} vertices; "
          f"max {format_float(float(field.values.max()))}")
    return 0


def _cmd_flow(args) -> int:
    graph, meta = _build_graph(args)
    outdir = _out_dir(args)
    if args.initial == "distance":
        start = graph_distance(graph).values
    else:
        start = _load_vertex_csv(args.initial, graph).values
    u0 = VertexFunction(graph, start)

    traj = gradient_flow(graph, u0, step=args.step, tol=args.extinction_tol)
    out_traj = os.path.join(outdir, "trajectory.csv")
    snap = None
    if args.snapshots > 0 and traj.extinction_time is not None:
        snap = np.linspace(0.0, traj.extinction_time, args.snapshots)
    write_trajectory_csv(traj, out_traj, snapshot_times=snap)
    outputs = ["trajectory.csv"]

    summary: dict = {"graph": meta,
                     "extinction_time": traj.extinction_time}
    if traj.profile is not None:
        profile, lam = asymptotic_profile(traj)
        _write_vertex_csv(os.path.join(outdir, "profile.csv"),
                          profile.values)
        outputs.append("profile.csv")
        summary["profile_eigenvalue"] = lam
        print(f"flow finished: extinction at "
              f"{format_float(traj.extinction_time)}; profile eigenvalue "
              f"{format_float(lam)}")
    else:
        print("flow finished without reaching extinction; "
              "increase --max-steps or loosen --extinction-tol")

    _maybe_dump_graph(graph, args, outdir, outputs)
    _write_run_record(args, outdir, outputs, summary)
    return 0


def _cmd_certify(args) -> int:
    graph, meta = _build_graph(args)
    outdir = _out_dir(args)
    if args.function:
        u = _load_vertex_csv(args.function, graph)
    else:
        u = VertexFunction(graph, graph_distance(graph).values)

    result = eigen_certificate(graph, u, tol=args.tol)
    outputs = []
    out = os.path.join(outdir, "certificate.json")
    if hasattr(result, "q"):
        write_certificate_json(result, out)
        outputs.append("certificate.json")
        print(f"certified: eigenvalue {format_float(result.eigenvalue)}, "
              f"balance residual {format_float(result.residual_inf)}")
        verdict = {"feasible": True, "eigenvalue": result.eigenvalue}
    else:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump({"feasible": False, "lambda": result.eigenvalue,
                       "reason": result.reason}, fh, indent=1)
            fh.write("\n")
        outputs.append("certificate.json")
        print(f"not an eigenfunction at eigenvalue "
              f"{format_float(result.eigenvalue)}: {result.reason}")
        verdict = {"feasible": False, "eigenvalue": result.eigenvalue}

    _maybe_dump_graph(graph, args, outdir, outputs)
    _write_run_record(args, outdir, outputs, {"graph": meta, **verdict})
    return 0


# ---------------------------------------------------------------------------
# continuum commands
# ---------------------------------------------------------------------------

def _profile_from_args(args) -> DomainProfile:
    if args.profile_csv:
        if args.dim is None:
            raise InputError("--profile-csv needs --dim")
        return profile_from_csv(args.profile_csv, args.dim)
    if args.domain == "interval":
        a, b = args.bounds
        return interval_profile(a, b)
    if args.domain == "disk":
        return disk_profile(args.radius)
    if args.domain == "square":
        return square_profile(args.side)
    if args.domain == "lshape":
        return lshape_profile(args.arm, args.thickness)
    raise InputError(f"unknown domain {args.domain!r}")


def _add_domain_args(parser: argparse.ArgumentParser) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--domain",
                     choices=("interval", "disk", "square", "lshape"))
    src.add_argument("--profile-csv", metavar="FILE",
                     help="tau,perimeter samples with a header row")
    parser.add_argument("--dim", type=int, help="dimension for --profile-csv")
    parser.add_argument("--bounds", type=float, nargs=2, default=(-1.0, 1.0),
                        metavar=("A", "B"), help="interval endpoints")
    parser.add_argument("--radius", type=float, default=1.0)
    parser.add_argument("--side", type=float, default=2.0)
    parser.add_argument("--arm", type=float, default=1.0)
    parser.add_argument("--thickness", type=float, default=0.4)


def _continuum_tables(profile: DomainProfile, outdir: str,
                      samples: int) -> tuple[list[str], dict]:
    ramp = solve_ramp_ode(profile, n_samples=samples)
    outputs = []

    out = os.path.join(outdir, "ramp.csv")
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "g"])
        for t, g in zip(ramp.times, ramp.values):
            writer.writerow([format_float(float(t)), format_float(float(g))])
    outputs.append("ramp.csv")

    has_bound = (profile.bound_inradius is not None
                 and profile.bound_range is not None)
    g_max_bound = (min(profile.bound_range / profile.inradius, 1.0)
                   if has_bound else 0.0)
    out = os.path.join(outdir, "moments.csv")
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["g", "first_moment", "second_moment",
                         "second_moment_lower_bound"])
        for g in np.linspace(0.0, 1.0, 65):
            row = [format_float(float(g)),
                   format_float(perimeter_moment(profile, 1, float(g))),
                   format_float(perimeter_moment(profile, 2, float(g)))]
            if has_bound and g <= g_max_bound * (1 + 1e-12):
                row.append(format_float(
                    perimeter_moment_lower_bound(profile, float(g))))
            else:
                row.append("")
            writer.writerow(row)
    outputs.append("moments.csv")

    summary = {
        "profile": profile.name,
        "dim": profile.dim,
        "inradius": profile.inradius,
        "t_star": ramp.t_star,
        "t_star_separable": ramp.t_star_separable,
        "distance_norm_sq": profile.d_norm2_sq,
        "extinction_time": extinction_time(profile, ramp),
    }
    if has_bound:
        rep = check_perimeter_lower_bound(profile)
        summary["perimeter_bound_ok"] = rep.ok
        summary["perimeter_bound_worst_margin"] = rep.worst_margin
    return outputs, summary


def _cmd_continuum(args) -> int:
    profile = _profile_from_args(args)
    outdir = _out_dir(args)
    outputs, summary = _continuum_tables(profile, outdir, args.samples)
    _write_run_record(args, outdir, outputs, summary)
    print(f"{profile.name}: cone opens fully at t* = "
          f"{format_float(summary['t_star'])}, extinction at "
          f"{format_float(summary['extinction_time'])}")
    return 0


# ---------------------------------------------------------------------------
# one-dimensional commands
# ---------------------------------------------------------------------------

def _load_piecewise_csv(path: str):
    from .continuum import PiecewiseLinearFn
    bps: list[Fraction] = []
    vals: list[Fraction] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        for row in reader:
            if not row or not row[0].strip():
                continue
            try:
                bps.append(Fraction(row[0]))
                vals.append(Fraction(row[1]))
            except (ValueError, ZeroDivisionError, IndexError) as exc:
                raise InputError(f"{path}: bad row {row!r}") from exc
    return PiecewiseLinearFn(bps, vals)


def _oned_function(args):
    if args.input:
        f = _load_piecewise_csv(args.input)
        label = os.path.basename(args.input)
    elif args.svc is not None:
        f = distance_to_set(svc_set(args.svc))
        label = f"svc-{args.svc}-distance"
    else:
        kind, n = args.kind, args.n
        f = basis_function(kind, n)
        label = f"{kind}-{n}"
    return f, label


def _add_oned_source(parser: argparse.ArgumentParser,
                     with_svc: bool = True) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--kind", choices=("odd", "even"),
                     help="sawtooth family (with --n)")
    if with_svc:
        src.add_argument("--svc", type=int, metavar="LEVEL",
                         help="distance to the level-LEVEL "
                              "Smith-Volterra-Cantor set")
    src.add_argument("--input", metavar="FILE",
                     help="breakpoint,value CSV (exact fractions allowed)")
    parser.add_argument("--n", type=int, default=1,
                        help="index within the sawtooth family")


def _write_piecewise_csv(f, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "value"])
        for b, v in zip(f.breakpoints, f.values):
            writer.writerow([str(b), str(v)])


def _cmd_basis(args) -> int:
    f = basis_function(args.kind, args.n)
    outdir = _out_dir(args)
    out = os.path.join(outdir, "basis.csv")
    _write_piecewise_csv(f, out)
    rq2 = rayleigh_quotient_sq(f)
    summary = {
        "kind": args.kind,
        "n": args.n,
        "norm_sq": str(f.l2_norm_sq()),
        "lipschitz": str(f.lipschitz),
        "rayleigh_quotient_sq": str(rq2),
    }
    _write_run_record(args, outdir, ["basis.csv"], summary)
    print(f"{args.kind}-{args.n}: squared norm {f.l2_norm_sq()}, "
          f"squared Rayleigh quotient {rq2}")
    return 0


def _cmd_extreme_1d(args) -> int:
    f, label = _oned_function(args)
    outdir = _out_dir(args)
    check = extreme_check_1d(f, tol=Fraction(args.tol) if args.tol else 0)

    record: dict = {"function": label, "is_extreme": check.is_extreme,
                    "epsilon": str(check.epsilon),
                    "slack_measure": str(check.slack_measure)}
    outputs = ["extreme.json"]
    _write_piecewise_csv(f, os.path.join(outdir, "function.csv"))
    outputs.append("function.csv")
    if not check.is_extreme:
        record["split_point"] = str(check.split_point)
        _write_piecewise_csv(check.v_plus, os.path.join(outdir, "v_plus.csv"))
        _write_piecewise_csv(check.v_minus, os.path.join(outdir, "v_minus.csv"))
        outputs += ["v_plus.csv", "v_minus.csv"]
    with open(os.path.join(outdir, "extreme.json"), "w",
              encoding="utf-8") as fh:
        json.dump(record, fh, indent=1, sort_keys=True)
        fh.write("\n")

    _write_run_record(args, outdir, outputs, record)
    if check.is_extreme:
        print(f"{label} is extreme: every segment is saturated")
    else:
        print(f"{label} is not extreme: slack measure "
              f"{check.slack_measure}, split at {check.split_point}")
    return 0


def _cmd_eigen_1d(args) -> int:
    f, label = _oned_function(args)
    outdir = _out_dir(args)
    check = eigen_check_1d(f, tol=Fraction(args.tol) if args.tol else 0)

    record = {
        "function": label,
        "feasible": check.feasible,
        "eigenvalue": str(check.eigenvalue),
        "eigenvalue_float": float(check.eigenvalue),
        "flux_start": None if check.q_start is None else str(check.q_start),
        "flux_lo": None if check.q_lo is None else str(check.q_lo),
        "flux_hi": None if check.q_hi is None else str(check.q_hi),
        "mass_gap": None if check.mass_gap is None else str(check.mass_gap),
        "reason": check.reason,
    }
    with open(os.path.join(outdir, "eigen1d.json"), "w",
              encoding="utf-8") as fh:
        json.dump(record, fh, indent=1, sort_keys=True)
        fh.write("\n")
    _write_run_record(args, outdir, ["eigen1d.json"], record)
    if check.feasible:
        print(f"{label} is an eigenfunction with eigenvalue "
              f"{check.eigenvalue}")
    else:
        print(f"{label} is not an eigenfunction: {check.reason}")
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def _cmd_report(args) -> int:
    outdir = _out_dir(args)
    outputs: list[str] = []
    summary: dict = {}

    if args.domain or args.profile_csv:
        profile = _profile_from_args(args)
        outputs, summary = _continuum_tables(profile, outdir, args.samples)
        if not args.no_figures:
            from . import report
            ramp = solve_ramp_ode(profile, n_samples=args.samples)
            fig = os.path.join(outdir, "ramp.png")
            report.ramp_figure(ramp, fig)
            outputs.append("ramp.png")
        print(f"continuum report for {profile.name} written to {outdir}")
    else:
        graph, meta = _build_graph(args)
        summary["graph"] = meta
        field = graph_distance(graph)
        _write_vertex_csv(os.path.join(outdir, "distance.csv"),
                          field.values, label="distance")
        outputs.append("distance.csv")

        u0 = VertexFunction(graph, field.values)
        traj = gradient_flow(graph, u0, tol=args.extinction_tol)
        write_trajectory_csv(traj, os.path.join(outdir, "trajectory.csv"))
        outputs.append("trajectory.csv")
        summary["extinction_time"] = traj.extinction_time

        profile_fn = None
        if traj.profile is not None:
            profile_fn, lam = asymptotic_profile(traj)
            _write_vertex_csv(os.path.join(outdir, "profile.csv"),
                              profile_fn.values)
            outputs.append("profile.csv")
            summary["profile_eigenvalue"] = lam

        cert = eigen_certificate(graph, u0)
        if hasattr(cert, "q"):
            write_certificate_json(cert, os.path.join(outdir,
                                                      "certificate.json"))
            outputs.append("certificate.json")
            summary["certified_eigenvalue"] = cert.eigenvalue

        if not args.no_figures:
            from . import report
            report.flow_figure(traj, os.path.join(outdir, "flow.png"))
            outputs.append("flow.png")
            shape = _grid_shape(args)
            report.field_figure(field.values,
                                os.path.join(outdir, "distance.png"),
                                grid_shape=shape)
            outputs.append("distance.png")
        _maybe_dump_graph(graph, args, outdir, outputs)
        print(f"graph report written to {outdir}")

    _write_run_record(args, outdir, outputs, summary)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxgrad",
        description="Maximal-gradient energies on graphs and domains: "
                    "distance ground states, eigenfunction certificates, "
                    "descent flows, and exact one-dimensional checks.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", metavar="DIR",
                       help="output directory (default: $MAXGRAD_OUTDIR "
                            "or the working directory)")

    p = sub.add_parser("graph-distance",
                       help="multi-source distance to the constraint set")
    _add_graph_source(p)
    p.add_argument("--counts", action="store_true",
                   help="also count geodesics per vertex (unit weights only)")
    add_out(p)
    p.set_defaults(func=_cmd_graph_distance)

    p = sub.add_parser("flow", help="implicit energy descent flow")
    _add_graph_source(p)
    p.add_argument("--initial", default="distance", metavar="WHAT",
                   help="'distance' or a vertex,value CSV file")
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--extinction-tol", type=float, default=1e-9)
    p.add_argument("--snapshots", type=int, default=0,
                   help="store this many state snapshots in the trajectory")
    add_out(p)
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("certify",
                       help="eigenfunction certificate or refutation")
    _add_graph_source(p)
    p.add_argument("--function", metavar="FILE",
                   help="vertex,value CSV; default is the distance function")
    p.add_argument("--tol", type=float, default=1e-7)
    add_out(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("continuum",
                       help="ramp ODE, moments, and extinction for a domain")
    _add_domain_args(p)
    p.add_argument("--samples", type=int, default=513)
    add_out(p)
    p.set_defaults(func=_cmd_continuum)

    p = sub.add_parser("basis", help="exact sawtooth basis data")
    p.add_argument("--kind", choices=("odd", "even"), required=True)
    p.add_argument("--n", type=int, required=True)
    add_out(p)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("extreme-1d",
                       help="extreme-point decision with witness")
    _add_oned_source(p)
    p.add_argument("--tol", default=None,
                   help="saturation slack, an exact fraction like 1/1000")
    add_out(p)
    p.set_defaults(func=_cmd_extreme_1d)

    p = sub.add_parser("eigen-1d",
                       help="one-dimensional eigenfunction decision")
    _add_oned_source(p)
    p.add_argument("--tol", default=None,
                   help="saturation slack, an exact fraction like 1/1000")
    add_out(p)
    p.set_defaults(func=_cmd_eigen_1d)

    p = sub.add_parser("report",
                       help="bundle of data files plus rendered figures")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--path", type=int, metavar="N")
    src.add_argument("--grid", type=int, nargs=2, metavar=("W", "H"))
    src.add_argument("--random", type=int, nargs=2, metavar=("N", "EXTRA"))
    src.add_argument("--input", metavar="FILE")
    src.add_argument("--domain",
                     choices=("interval", "disk", "square", "lshape"))
    src.add_argument("--profile-csv", metavar="FILE")
    p.add_argument("--boundary", choices=("ring", "corners"), default="ring")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int)
    p.add_argument("--bounds", type=float, nargs=2, default=(-1.0, 1.0),
                   metavar=("A", "B"))
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--side", type=float, default=2.0)
    p.add_argument("--arm", type=float, default=1.0)
    p.add_argument("--thickness", type=float, default=0.4)
    p.add_argument("--samples", type=int, default=513)
    p.add_argument("--extinction-tol", type=float, default=1e-9)
    p.add_argument("--no-figures", action="store_true",
                   help="write only the delimited data")
    add_out(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MaxgradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
