"""Serialization: graph JSON, trajectory CSV, certificate JSON.

The graph schema is a flat JSON object::

    {"vertices": 4,
     "edges": [[0, 1, 1.0], [1, 2, 1.0], [2, 3, 1.0]],
     "boundary": [0, 3]}

Floats in CSV output are written with 17 significant digits and a dot
decimal separator, so files round-trip bit-exactly and diff cleanly
across runs.
"""

from __future__ import annotations

import csv
import json
import math
from typing import IO, Iterable

import numpy as np

from ..errors import InputError
from .core import EdgeFunction, VertexFunction, WeightedGraph, build_graph
from .spectral import EigenCertificate, FlowTrajectory

__all__ = [
    "load_graph_json",
    "dump_graph_json",
    "format_float",
    "write_trajectory_csv",
    "certificate_to_dict",
    "write_certificate_json",
]


def format_float(x: float) -> str:
    """17-significant-digit decimal representation, round-trip safe."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def load_graph_json(source: str | IO[str]) -> WeightedGraph:
    """Read a graph from a JSON file path or open text stream."""
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    try:
        vertices = int(doc["vertices"])
        edges = [(int(e[0]), int(e[1]), float(e[2])) for e in doc["edges"]]
        boundary = [int(b) for b in doc["boundary"]]
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise InputError(f"malformed graph document: {exc}") from exc
    return build_graph(vertices, edges, boundary)


def dump_graph_json(graph: WeightedGraph, path: str) -> None:
    doc = {
        "vertices": graph.vertex_count,
        "edges": [[int(a), int(b), float(w)] for a, b, w in
                  zip(graph.edge_u, graph.edge_v, graph.weights)],
        "boundary": sorted(graph.boundary),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def write_trajectory_csv(trajectory: FlowTrajectory, path: str,
                         snapshot_times: Iterable[float] | None = None) -> None:
    """Write t, norm2, energy rows, optionally with per-vertex snapshots.

    When ``snapshot_times`` is given, the states at the sampled times
    nearest the requested ones are appended as extra columns ``u<id>``,
    one per vertex, on the matching rows only; other rows leave the
    columns empty.
    """
    times = trajectory.times
    snap_rows: set[int] = set()
    if snapshot_times is not None:
        for t in snapshot_times:
            snap_rows.add(int(np.argmin(np.abs(times - t))))

    n = trajectory.states[0].graph.vertex_count
    header = ["t", "norm2", "energy"]
    if snap_rows:
        header += [f"u{i}" for i in range(n)]

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for k, t in enumerate(times):
            row = [format_float(t),
                   format_float(trajectory.norms[k]),
                   format_float(trajectory.energies[k])]
            if snap_rows:
                if k in snap_rows:
                    row += [format_float(v) for v in trajectory.states[k].values]
                else:
                    row += [""] * n
            writer.writerow(row)


def certificate_to_dict(cert: EigenCertificate) -> dict:
    """JSON-ready view of a certificate: eigenvalue, sparse q, residuals."""
    graph = cert.q.graph
    entries = []
    fwd = cert.q.forward
    for k in np.flatnonzero(fwd):
        a, b = int(graph.edge_u[k]), int(graph.edge_v[k])
        entries.append([a, b, float(fwd[k])])
        entries.append([b, a, -float(fwd[k])])
    return {
        "lambda": cert.eigenvalue,
        "q": entries,
        "residuals": {
            "balance_inf": cert.residual_inf,
            "norm_gap": cert.norm_gap,
            "support_violation": cert.support_violation,
            "parallel_violation": cert.parallel_violation,
        },
    }


def write_certificate_json(cert: EigenCertificate, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(certificate_to_dict(cert), fh, indent=1)
        fh.write("\n")
