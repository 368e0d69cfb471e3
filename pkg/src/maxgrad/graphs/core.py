"""Calculus on finite weighted graphs.

A weighted graph carries symmetric positive edge weights and a nonempty
proper subset of constraint vertices on which admissible functions vanish.
This module provides the gradient and divergence operators, the one-sided
(descent) gradient, edge and vertex p-norms, and the Lipschitz energy

    J_w(u) = max over ordered pairs of |w(x,y)^(1/2) (u(y) - u(x))|,

extended by +inf when u fails to vanish on the constraint set.

Conventions
-----------
Edge functions live on ordered vertex pairs: every stored undirected edge
contributes two entries, one per orientation.  Norms therefore sum over
both orientations, so an antisymmetric flow q supported on k undirected
edges with magnitude 1/(2k) each has ``norm_p(q, 1) == 1``.  The
divergence is the negative adjoint of the gradient,

    div_w q(x) = sum over y ~ x of w(x,y)^(1/2) (q(x,y) - q(y,x)),

which makes ``<q, grad u> == -<div q, u>`` hold exactly (up to rounding)
for every edge function q, antisymmetric or not.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import (
    BoundaryIsEverything,
    ConflictingEdgeWeights,
    DisconnectedGraph,
    EmptyBoundary,
    InputError,
    InvalidP,
    NonpositiveWeight,
    SelfLoop,
)

__all__ = [
    "WeightedGraph",
    "VertexFunction",
    "EdgeFunction",
    "build_graph",
    "weighted_gradient",
    "weighted_divergence",
    "one_sided_gradient",
    "norm_p",
    "lipschitz_energy",
]


class WeightedGraph:
    """Connected undirected graph with positive weights and a constraint set.

    Vertices are dense integers ``0..n-1``.  Edges are stored once per
    undirected pair in a canonical order (sorted by endpoint indices);
    ordered-pair data uses index ``k`` for the stored orientation
    ``(edge_u[k], edge_v[k])`` and ``k + edge_count`` for the reverse.

    Instances are immutable: arrays are materialized once and marked
    read-only, so a graph can be shared freely across solvers.
    """

    __slots__ = (
        "vertex_count",
        "edge_u",
        "edge_v",
        "weights",
        "sqrt_weights",
        "boundary",
        "boundary_mask",
        "interior",
        "_pair_index",
        "_neighbors",
        "_incident_edges",
    )

    def __init__(
        self,
        vertex_count: int,
        edge_u: np.ndarray,
        edge_v: np.ndarray,
        weights: np.ndarray,
        boundary: frozenset[int],
    ):
        self.vertex_count = int(vertex_count)
        self.edge_u = edge_u
        self.edge_v = edge_v
        self.weights = weights
        self.sqrt_weights = np.sqrt(weights)
        self.boundary = boundary
        mask = np.zeros(self.vertex_count, dtype=bool)
        mask[list(boundary)] = True
        self.boundary_mask = mask
        self.interior = np.flatnonzero(~mask)
        for arr in (self.edge_u, self.edge_v, self.weights,
                    self.sqrt_weights, self.boundary_mask, self.interior):
            arr.setflags(write=False)

        m = len(edge_u)
        self._pair_index = {}
        for k in range(m):
            a, b = int(edge_u[k]), int(edge_v[k])
            self._pair_index[(a, b)] = k
            self._pair_index[(b, a)] = k + m

        neighbors: list[list[int]] = [[] for _ in range(self.vertex_count)]
        incident: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for k in range(m):
            a, b = int(edge_u[k]), int(edge_v[k])
            neighbors[a].append(b)
            neighbors[b].append(a)
            incident[a].append(k)
            incident[b].append(k)
        self._neighbors = tuple(tuple(v) for v in neighbors)
        self._incident_edges = tuple(tuple(v) for v in incident)

    @property
    def edge_count(self) -> int:
        """Number of stored undirected edges."""
        return len(self.edge_u)

    @property
    def interior_count(self) -> int:
        return self.vertex_count - len(self.boundary)

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._neighbors[x]

    def incident_edges(self, x: int) -> tuple[int, ...]:
        """Indices of stored edges touching vertex x."""
        return self._incident_edges[x]

    def pair_index(self, x: int, y: int) -> int:
        """Ordered-pair index of (x, y); KeyError when not adjacent."""
        return self._pair_index[(x, y)]

    def has_edge(self, x: int, y: int) -> bool:
        return (x, y) in self._pair_index

    def weighted_degree(self) -> np.ndarray:
        """Per-vertex sum of incident edge weights."""
        deg = np.zeros(self.vertex_count)
        np.add.at(deg, self.edge_u, self.weights)
        np.add.at(deg, self.edge_v, self.weights)
        return deg

    def gradient_norm_bound(self) -> float:
        """Upper bound on the operator norm of the weighted gradient.

        Uses the edge-degree bound: the squared norm of the gradient, with
        ordered-pair inner products, is twice the largest eigenvalue of the
        weighted Laplacian, which is at most the largest sum of weighted
        degrees over the two endpoints of an edge.
        """
        deg = self.weighted_degree()
        return math.sqrt(2.0 * float(np.max(deg[self.edge_u] + deg[self.edge_v])))

    def __repr__(self) -> str:
        return (f"WeightedGraph(n={self.vertex_count}, m={self.edge_count}, "
                f"boundary={sorted(self.boundary)})")


class VertexFunction:
    """Real-valued function on the vertices of a fixed graph."""

    __slots__ = ("graph", "values")

    def __init__(self, graph: WeightedGraph, values: np.ndarray | Sequence[float]):
        arr = np.asarray(values, dtype=float)
        if arr.shape != (graph.vertex_count,):
            raise ValueError(
                f"expected {graph.vertex_count} vertex values, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        self.graph = graph
        self.values = arr

    def __getitem__(self, x: int) -> float:
        return float(self.values[x])

    def __len__(self) -> int:
        return len(self.values)

    def vanishes_on_boundary(self) -> bool:
        return not np.any(self.values[self.graph.boundary_mask])

    def restricted_to_interior(self) -> "VertexFunction":
        """Copy with constraint vertices zeroed."""
        vals = self.values.copy()
        vals[self.graph.boundary_mask] = 0.0
        return VertexFunction(self.graph, vals)

    def __repr__(self) -> str:
        return f"VertexFunction({np.array2string(self.values, precision=6)})"


class EdgeFunction:
    """Real-valued function on ordered vertex pairs of a fixed graph.

    ``values`` has length ``2 * edge_count``: entry ``k`` is the value on
    the stored orientation of edge k, entry ``k + edge_count`` the value on
    the reverse orientation.
    """

    __slots__ = ("graph", "values", "antisymmetric")

    def __init__(
        self,
        graph: WeightedGraph,
        values: np.ndarray | Sequence[float],
        antisymmetric: bool | None = None,
    ):
        arr = np.asarray(values, dtype=float)
        if arr.shape != (2 * graph.edge_count,):
            raise ValueError(
                f"expected {2 * graph.edge_count} ordered-pair values, "
                f"got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        self.graph = graph
        self.values = arr
        m = graph.edge_count
        if antisymmetric is None:
            antisymmetric = bool(np.array_equal(arr[m:], -arr[:m]))
        self.antisymmetric = antisymmetric

    @classmethod
    def from_forward(cls, graph: WeightedGraph, forward: np.ndarray) -> "EdgeFunction":
        """Antisymmetric edge function from values on stored orientations."""
        forward = np.asarray(forward, dtype=float)
        return cls(graph, np.concatenate([forward, -forward]), antisymmetric=True)

    @property
    def forward(self) -> np.ndarray:
        """Values on the stored orientations."""
        return self.values[: self.graph.edge_count]

    @property
    def backward(self) -> np.ndarray:
        return self.values[self.graph.edge_count:]

    def __getitem__(self, pair: tuple[int, int]) -> float:
        x, y = pair
        return float(self.values[self.graph.pair_index(x, y)])

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return (f"EdgeFunction(m={self.graph.edge_count}, "
                f"antisymmetric={self.antisymmetric})")


def build_graph(
    vertex_count: int,
    edges: Iterable[tuple[int, int, float]],
    boundary: Iterable[int],
) -> WeightedGraph:
    """Validate and construct a weighted graph.

    Parameters
    ----------
    vertex_count:
        Number of vertices; ids are 0..vertex_count-1.
    edges:
        Iterable of (x, y, weight) triples.  Orientation is irrelevant.
        Exact duplicates are merged; the same pair with two different
        weights raises :class:`ConflictingEdgeWeights`.
    boundary:
        Vertex ids forming the constraint set.  Must be nonempty and a
        proper subset of the vertices.

    Raises
    ------
    SelfLoop, NonpositiveWeight, ConflictingEdgeWeights, EmptyBoundary,
    BoundaryIsEverything, DisconnectedGraph
    """
    if vertex_count < 1:
        raise InputError("graph needs at least one vertex")

    seen: dict[tuple[int, int], float] = {}
    for x, y, w in edges:
        x, y = int(x), int(y)
        w = float(w)
        if x == y:
            raise SelfLoop(f"self loop at vertex {x}")
        if not (0 <= x < vertex_count and 0 <= y < vertex_count):
            raise InputError(
                f"edge ({x},{y}) references a vertex outside 0..{vertex_count - 1}")
        if w <= 0 or not math.isfinite(w):
            raise NonpositiveWeight(f"edge ({x},{y}) has weight {w}")
        key = (min(x, y), max(x, y))
        if key in seen and seen[key] != w:
            raise ConflictingEdgeWeights(
                f"edge {key} listed with weights {seen[key]} and {w}")
        seen[key] = w

    bset = frozenset(int(b) for b in boundary)
    if not bset:
        raise EmptyBoundary("constraint set is empty")
    if not all(0 <= b < vertex_count for b in bset):
        raise InputError("constraint set references unknown vertices")
    if len(bset) == vertex_count:
        raise BoundaryIsEverything("every vertex is constrained")

    keys = sorted(seen)
    edge_u = np.array([k[0] for k in keys], dtype=np.intp)
    edge_v = np.array([k[1] for k in keys], dtype=np.intp)
    weights = np.array([seen[k] for k in keys], dtype=float)

    # connectivity via union-find
    parent = list(range(vertex_count))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in keys:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots = {find(v) for v in range(vertex_count)}
    if len(roots) != 1:
        raise DisconnectedGraph(f"graph has {len(roots)} connected components")

    return WeightedGraph(vertex_count, edge_u, edge_v, weights, bset)


def _as_vertex_values(graph: WeightedGraph, u) -> np.ndarray:
    if isinstance(u, VertexFunction):
        if u.graph is not graph:
            raise ValueError("vertex function belongs to a different graph")
        return u.values
    arr = np.asarray(u, dtype=float)
    if arr.shape != (graph.vertex_count,):
        raise ValueError(f"expected {graph.vertex_count} values, got {arr.shape}")
    return arr


def weighted_gradient(graph: WeightedGraph, u: VertexFunction) -> EdgeFunction:
    """Antisymmetric weighted difference w^(1/2) (u(y) - u(x)) on ordered pairs."""
    vals = _as_vertex_values(graph, u)
    fwd = graph.sqrt_weights * (vals[graph.edge_v] - vals[graph.edge_u])
    return EdgeFunction.from_forward(graph, fwd)


def weighted_divergence(graph: WeightedGraph, q: EdgeFunction) -> VertexFunction:
    """Divergence adjoint to the weighted gradient.

    ``div q(x) = sum over y ~ x of w(x,y)^(1/2) (q(x,y) - q(y,x))``.  The
    sign convention is fixed by exact adjointness,
    ``<q, grad u> == -<div q, u>``, inner products taken over ordered
    pairs and vertices respectively.
    """
    if q.graph is not graph:
        raise ValueError("edge function belongs to a different graph")
    sw = graph.sqrt_weights
    flux = sw * (q.forward - q.backward)
    div = np.zeros(graph.vertex_count)
    np.add.at(div, graph.edge_u, flux)
    np.add.at(div, graph.edge_v, -flux)
    return VertexFunction(graph, div)


def one_sided_gradient(graph: WeightedGraph, u: VertexFunction) -> EdgeFunction:
    """Nonnegative descent part w^(1/2) max(u(x) - u(y), 0) per ordered pair.

    For any u the pointwise identity
    ``|grad u(x,y)| == one_sided(x,y) + one_sided(y,x)`` holds, since the
    two orientations pick up the negative and positive parts of the same
    difference.
    """
    vals = _as_vertex_values(graph, u)
    diff = vals[graph.edge_v] - vals[graph.edge_u]
    fwd = graph.sqrt_weights * np.maximum(-diff, 0.0)
    bwd = graph.sqrt_weights * np.maximum(diff, 0.0)
    return EdgeFunction(graph, np.concatenate([fwd, bwd]), antisymmetric=False)


def norm_p(f: VertexFunction | EdgeFunction, p: float) -> float:
    """p-norm over vertices, or over ordered pairs for edge functions.

    p may be any real in [1, inf]; ``math.inf`` gives the max norm.
    """
    if isinstance(p, str):
        raise InvalidP(f"norm exponent must be a number, got {p!r}")
    if p != math.inf and (not math.isfinite(p) or p < 1):
        raise InvalidP(f"norm exponent must satisfy 1 <= p <= inf, got {p}")
    vals = f.values
    if len(vals) == 0:
        return 0.0
    if p == math.inf:
        return float(np.max(np.abs(vals)))
    if p == 1:
        return float(np.sum(np.abs(vals)))
    if p == 2:
        return float(np.linalg.norm(vals))
    return float(np.sum(np.abs(vals) ** p) ** (1.0 / p))


def lipschitz_energy(graph: WeightedGraph, u: VertexFunction) -> float:
    """Max ordered-pair weighted difference, +inf off the constraint space.

    This is the objective J_w: the largest value of
    |w(x,y)^(1/2) (u(y) - u(x))| over edges, provided u vanishes on the
    constraint set; otherwise +inf.  Vanishing is checked exactly, so
    callers working with approximate data should zero the constraint
    vertices first.
    """
    vals = _as_vertex_values(graph, u)
    if np.any(vals[graph.boundary_mask] != 0.0):
        return math.inf
    if graph.edge_count == 0:
        return 0.0
    diff = graph.sqrt_weights * (vals[graph.edge_v] - vals[graph.edge_u])
    return float(np.max(np.abs(diff)))
