"""Standard example graphs and reproducible random instances."""

from __future__ import annotations

from typing import Iterable, Literal

import numpy as np

from ..errors import InputError
from .core import WeightedGraph, build_graph

__all__ = [
    "path_graph",
    "grid_graph",
    "random_connected_graph",
    "graph_from_mesh_edges",
]


def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    """Path on n vertices with both endpoints constrained."""
    if n < 3:
        raise InputError("a path needs at least 3 vertices to have an interior")
    edges = [(i, i + 1, weight) for i in range(n - 1)]
    return build_graph(n, edges, boundary=[0, n - 1])


def grid_graph(width: int, height: int,
               boundary: Literal["ring", "corners"] = "ring") -> WeightedGraph:
    """4-neighbor unit-weight grid, vertices numbered row by row.

    ``boundary="ring"`` constrains the outer frame, ``"corners"`` only the
    four corner vertices.
    """
    if width < 3 or height < 3:
        raise InputError("grid needs width and height at least 3")

    def vid(i: int, j: int) -> int:
        return i * width + j

    edges = []
    for i in range(height):
        for j in range(width):
            if j + 1 < width:
                edges.append((vid(i, j), vid(i, j + 1), 1.0))
            if i + 1 < height:
                edges.append((vid(i, j), vid(i + 1, j), 1.0))

    if boundary == "ring":
        constrained = [vid(i, j) for i in range(height) for j in range(width)
                       if i in (0, height - 1) or j in (0, width - 1)]
    elif boundary == "corners":
        constrained = [vid(0, 0), vid(0, width - 1),
                       vid(height - 1, 0), vid(height - 1, width - 1)]
    else:
        raise InputError(f"unknown boundary style {boundary!r}")
    return build_graph(width * height, edges, boundary=constrained)


def random_connected_graph(n: int, extra_edges: int, seed: int,
                           weight_range: tuple[float, float] = (0.5, 2.0),
                           boundary_size: int | None = None) -> WeightedGraph:
    """Random connected graph: a random tree plus extra random edges.

    Deterministic for a fixed seed.  Weights are drawn uniformly from
    ``weight_range``; the constraint set is a random subset of the
    requested size (default one vertex).
    """
    if n < 2:
        raise InputError("need at least 2 vertices")
    rng = np.random.default_rng(seed)
    lo, hi = weight_range
    if not (0 < lo <= hi):
        raise InputError("weight range must be positive")

    pairs: set[tuple[int, int]] = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        pairs.add((u, v))
    possible = n * (n - 1) // 2 - len(pairs)
    for _ in range(min(extra_edges, possible)):
        while True:
            a = int(rng.integers(0, n))
            b = int(rng.integers(0, n))
            if a == b:
                continue
            key = (min(a, b), max(a, b))
            if key not in pairs:
                pairs.add(key)
                break

    edges = [(a, b, float(rng.uniform(lo, hi))) for a, b in sorted(pairs)]
    k = 1 if boundary_size is None else boundary_size
    if not (1 <= k < n):
        raise InputError("boundary size must be in [1, n)")
    constrained = rng.choice(n, size=k, replace=False)
    return build_graph(n, edges, boundary=constrained.tolist())


def graph_from_mesh_edges(rows: Iterable[tuple[str, str, float]],
                          boundary_labels: Iterable[str]) -> tuple[WeightedGraph, dict[str, int]]:
    """Build a graph from labeled edge rows, mapping labels to dense ids.

    Labels are assigned ids in first-appearance order over the edge rows.
    Returns the graph and the label-to-id map.
    """
    ids: dict[str, int] = {}
    triples: list[tuple[int, int, float]] = []
    for a, b, w in rows:
        for lab in (a, b):
            if lab not in ids:
                ids[lab] = len(ids)
        triples.append((ids[a], ids[b], float(w)))
    blabels = list(boundary_labels)
    missing = [lab for lab in blabels if lab not in ids]
    if missing:
        raise InputError(f"boundary labels not present in edge list: {missing}")
    graph = build_graph(len(ids), triples, boundary=[ids[lab] for lab in blabels])
    return graph, ids
