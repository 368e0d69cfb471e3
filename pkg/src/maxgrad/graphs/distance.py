"""Distance functions to the constraint set of a weighted graph.

The metric length of an edge is w(x,y)^(-1/2), so the distance function

    d(x) = min over paths from x to the constraint set of the path length

is exactly the largest function that vanishes on the constraint set and
has Lipschitz energy at most one.  It is computed with a multi-source
Dijkstra sweep seeded on the constraint vertices; alongside the values we
keep, for every vertex, the set of neighbors that start a shortest path
toward the constraint set.  Those predecessor sets determine which edges
the distance function saturates.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidIndex, InvalidP, NonUnitWeights
from .core import EdgeFunction, VertexFunction, WeightedGraph, weighted_gradient

__all__ = [
    "DistanceField",
    "SaturationReport",
    "graph_distance",
    "ground_state",
    "gradient_saturation",
    "shortest_path_count",
]

# relative tolerance for recognizing ties between competing path lengths
_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class DistanceField:
    """Distance function together with shortest-path predecessor sets.

    ``predecessors[x]`` holds the neighbors y with
    d(x) = d(y) + w(x,y)^(-1/2), i.e. the admissible first steps of
    shortest paths from x toward the constraint set.  Constraint vertices
    get the empty set.
    """

    function: VertexFunction
    predecessors: tuple[frozenset[int], ...]

    @property
    def values(self) -> np.ndarray:
        return self.function.values

    @property
    def graph(self) -> WeightedGraph:
        return self.function.graph


@dataclass(frozen=True)
class SaturationReport:
    """Per-edge split of the distance gradient into saturated and strict.

    ``saturated[k]`` refers to stored edge k and is true when
    |grad d| equals one there (up to tolerance); on the remaining edges
    the gradient magnitude is strictly below one.
    """

    graph: WeightedGraph
    saturated: np.ndarray
    gradient: EdgeFunction

    def is_saturated(self, x: int, y: int) -> bool:
        k = self.graph.pair_index(x, y)
        return bool(self.saturated[k % self.graph.edge_count])


def graph_distance(graph: WeightedGraph) -> DistanceField:
    """Multi-source shortest-path distance to the constraint set.

    Returns
    -------
    DistanceField
        Distance values (zero on the constraint set, positive elsewhere,
        finite since the graph is connected) plus predecessor sets.
    """
    n = graph.vertex_count
    dist = np.full(n, math.inf)
    lengths = 1.0 / graph.sqrt_weights

    heap: list[tuple[float, int]] = []
    for b in graph.boundary:
        dist[b] = 0.0
        heapq.heappush(heap, (0.0, b))

    done = np.zeros(n, dtype=bool)
    while heap:
        dx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for k in graph.incident_edges(x):
            y = int(graph.edge_v[k]) if int(graph.edge_u[k]) == x else int(graph.edge_u[k])
            cand = dx + lengths[k]
            if cand < dist[y]:
                dist[y] = cand
                heapq.heappush(heap, (cand, y))

    preds: list[frozenset[int]] = []
    for x in range(n):
        if graph.boundary_mask[x]:
            preds.append(frozenset())
            continue
        step: set[int] = set()
        for k in graph.incident_edges(x):
            y = int(graph.edge_v[k]) if int(graph.edge_u[k]) == x else int(graph.edge_u[k])
            if math.isclose(dist[x], dist[y] + lengths[k],
                            rel_tol=_TIE_RTOL, abs_tol=1e-300):
                step.add(y)
        preds.append(frozenset(step))

    return DistanceField(VertexFunction(graph, dist), tuple(preds))


def ground_state(graph: WeightedGraph, p_norm: float = 2.0) -> VertexFunction:
    """Distance function, the maximal unit-energy profile.

    The distance function maximizes every vertex p-norm simultaneously
    among functions that vanish on the constraint set and have Lipschitz
    energy at most one, so the normalization exponent does not change the
    result.  ``p_norm`` is validated and otherwise ignored.
    """
    if p_norm != math.inf and (not math.isfinite(p_norm) or p_norm < 1):
        raise InvalidP(f"norm exponent must satisfy 1 <= p <= inf, got {p_norm}")
    return graph_distance(graph).function


def gradient_saturation(graph: WeightedGraph, field: DistanceField,
                        tol: float = 1e-12) -> SaturationReport:
    """Classify each edge by whether the distance gradient saturates there.

    An edge is saturated when |grad d| is within ``tol`` of one, which
    happens exactly when one endpoint lies on a shortest path from the
    other toward the constraint set.
    """
    grad = weighted_gradient(graph, field.function)
    mags = np.abs(grad.forward)
    saturated = np.abs(mags - 1.0) <= tol
    return SaturationReport(graph, saturated, grad)


def shortest_path_count(graph: WeightedGraph, field: DistanceField, x: int) -> int:
    """Number of shortest paths leaving x toward the constraint set, counted
    by first step.

    Requires unit weights, where the count equals the sum of the one-sided
    descent gradient of d over the ordered pairs leaving x, each downhill
    neighbor contributing exactly one.
    """
    if np.any(graph.weights != 1.0):
        raise NonUnitWeights("shortest-path counting requires unit weights")
    if not (0 <= x < graph.vertex_count):
        raise InvalidIndex(f"vertex {x} out of range")
    d = field.values
    total = 0.0
    for y in graph.neighbors(x):
        total += max(d[x] - d[y], 0.0)
    count = int(round(total))
    return count
