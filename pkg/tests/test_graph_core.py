"""Graph construction, first-order operators, and the energy functional."""

import math

import numpy as np
import pytest

from maxgrad.graphs import (
    EdgeFunction,
    VertexFunction,
    build_graph,
    lipschitz_energy,
    norm_p,
    one_sided_gradient,
    weighted_divergence,
    weighted_gradient,
)
from maxgrad.errors import (
    BoundaryIsEverything,
    ConflictingEdgeWeights,
    DisconnectedGraph,
    EmptyBoundary,
    InvalidP,
    NonpositiveWeight,
    SelfLoop,
)
from maxgrad.graphs.generators import path_graph, random_connected_graph


def p4():
    """Path on four vertices, unit weights, endpoints constrained."""
    return path_graph(4)


# ---------------------------------------------------------------------------
# construction and validation


def test_build_graph_basic_accessors():
    g = build_graph(4, [(0, 1, 1.0), (1, 2, 4.0), (2, 3, 1.0)], [0, 3])
    assert g.vertex_count == 4
    assert g.edge_count == 3
    assert g.interior_count == 2
    assert g.boundary == frozenset({0, 3})
    assert g.neighbors(1) == (0, 2)
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)
    assert np.allclose(g.weights, [1.0, 4.0, 1.0])
    assert np.allclose(g.sqrt_weights, [1.0, 2.0, 1.0])


def test_pair_index_covers_both_orientations():
    g = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)], [0])
    k = g.pair_index(0, 1)
    assert g.pair_index(1, 0) == k + g.edge_count
    fwd = np.array([5.0, 7.0])
    q = EdgeFunction.from_forward(g, fwd)
    assert q[0, 1] == 5.0
    assert q[1, 0] == -5.0


def test_weighted_degree_and_gradient_norm_bound():
    g = build_graph(4, [(0, 1, 1.0), (1, 2, 4.0), (2, 3, 1.0)], [0, 3])
    assert np.allclose(g.weighted_degree(), [1.0, 5.0, 5.0, 1.0])
    # max over edges of wdeg(x) + wdeg(y) is 10, attained on the middle edge
    assert g.gradient_norm_bound() == pytest.approx(math.sqrt(20.0))


def test_gradient_norm_bound_is_an_operator_bound():
    rng = np.random.default_rng(5)
    for trial in range(50):
        g = random_connected_graph(8, 5, seed=trial)
        u = rng.standard_normal(g.vertex_count)
        grad = weighted_gradient(g, VertexFunction(g, u))
        lhs = norm_p(grad, 2)
        rhs = g.gradient_norm_bound() * float(np.linalg.norm(u))
        assert lhs <= rhs * (1.0 + 1e-12)


def test_build_graph_rejects_bad_input():
    with pytest.raises(NonpositiveWeight):
        build_graph(3, [(0, 1, 0.0), (1, 2, 1.0)], [0])
    with pytest.raises(NonpositiveWeight):
        build_graph(3, [(0, 1, -2.0), (1, 2, 1.0)], [0])
    with pytest.raises(SelfLoop):
        build_graph(3, [(0, 0, 1.0), (1, 2, 1.0)], [0])
    with pytest.raises(ConflictingEdgeWeights):
        build_graph(3, [(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0)], [0])
    with pytest.raises(DisconnectedGraph):
        build_graph(4, [(0, 1, 1.0), (2, 3, 1.0)], [0])
    with pytest.raises(EmptyBoundary):
        build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)], [])
    with pytest.raises(BoundaryIsEverything):
        build_graph(2, [(0, 1, 1.0)], [0, 1])


def test_duplicate_edge_with_equal_weight_is_merged():
    g = build_graph(3, [(0, 1, 2.0), (1, 0, 2.0), (1, 2, 1.0)], [0])
    assert g.edge_count == 2


# ---------------------------------------------------------------------------
# vertex and edge functions


def test_vertex_function_boundary_queries():
    g = p4()
    u = VertexFunction(g, [0.0, 1.0, 1.0, 0.0])
    assert u.vanishes_on_boundary()
    assert len(u) == 4
    assert u[2] == 1.0
    v = VertexFunction(g, [0.5, 1.0, 1.0, 0.0])
    assert not v.vanishes_on_boundary()
    assert np.allclose(v.restricted_to_interior().values, [0.0, 1.0, 1.0, 0.0])
    assert v.restricted_to_interior().vanishes_on_boundary()


def test_edge_function_orientation_halves():
    g = p4()
    q = EdgeFunction(g, [1.0, 2.0, 3.0, -1.0, -2.0, -3.0])
    assert q.antisymmetric
    assert np.allclose(q.forward, [1.0, 2.0, 3.0])
    assert np.allclose(q.backward, [-1.0, -2.0, -3.0])
    r = EdgeFunction(g, [1.0, 0.0, 0.0, 1.0, 0.0, 0.0])
    assert not r.antisymmetric
    with pytest.raises(ValueError):
        EdgeFunction(g, [1.0, 2.0, 3.0])


# ---------------------------------------------------------------------------
# gradient, divergence, adjointness


def test_gradient_values_on_path():
    g = p4()
    u = VertexFunction(g, [0.0, 1.0, 1.0, 0.0])
    grad = weighted_gradient(g, u)
    assert np.allclose(grad.forward, [1.0, 0.0, -1.0])
    assert grad.antisymmetric


def test_gradient_scales_with_sqrt_weight():
    g = build_graph(2, [(0, 1, 9.0)], [0])
    grad = weighted_gradient(g, VertexFunction(g, [0.0, 2.0]))
    assert grad.forward[0] == pytest.approx(6.0)


def test_divergence_of_gradient_on_path():
    g = p4()
    u = VertexFunction(g, [0.0, 1.0, 1.0, 0.0])
    div = weighted_divergence(g, weighted_gradient(g, u))
    assert np.allclose(div.values, [2.0, -2.0, -2.0, 2.0])


def test_divergence_matches_brute_force_double_sum():
    g = random_connected_graph(6, 4, seed=11)
    rng = np.random.default_rng(11)
    q = EdgeFunction(g, rng.standard_normal(2 * g.edge_count))
    div = weighted_divergence(g, q)
    for x in range(g.vertex_count):
        total = sum(
            math.sqrt(g.weights[g.pair_index(x, y) % g.edge_count])
            * (q[x, y] - q[y, x])
            for y in g.neighbors(x)
        )
        assert div[x] == pytest.approx(total, abs=1e-12)


def test_adjointness_on_random_graphs():
    """<q, grad u> + <div q, u> vanishes for arbitrary q and u."""
    rng = np.random.default_rng(0)
    for trial in range(200):
        n = int(rng.integers(2, 13))
        g = random_connected_graph(n, int(rng.integers(0, n)), seed=trial)
        u = VertexFunction(g, rng.standard_normal(n))
        q = EdgeFunction(g, rng.standard_normal(2 * g.edge_count))
        grad = weighted_gradient(g, u)
        lhs = float(q.values @ grad.values)
        rhs = float(weighted_divergence(g, q).values @ u.values)
        scale = 1.0 + norm_p(q, 2) * norm_p(u, 2)
        assert abs(lhs + rhs) <= 1e-12 * scale


def test_one_sided_gradient_splits_the_magnitude():
    rng = np.random.default_rng(3)
    for trial in range(20):
        g = random_connected_graph(7, 3, seed=100 + trial)
        u = VertexFunction(g, rng.standard_normal(7))
        grad = weighted_gradient(g, u)
        one = one_sided_gradient(g, u)
        m = g.edge_count
        recombined = one.values[:m] + one.values[m:]
        assert np.allclose(np.abs(grad.forward), recombined, atol=1e-14)
        assert np.all(one.values >= 0.0)


# ---------------------------------------------------------------------------
# norms and the energy functional


def test_norm_p_values():
    g = p4()
    u = VertexFunction(g, [0.0, 3.0, -4.0, 0.0])
    assert norm_p(u, 2) == pytest.approx(5.0)
    assert norm_p(u, 1) == pytest.approx(7.0)
    assert norm_p(u, math.inf) == pytest.approx(4.0)
    assert norm_p(u, 3) == pytest.approx((27.0 + 64.0) ** (1.0 / 3.0))


def test_norm_p_rejects_bad_exponent():
    g = p4()
    u = VertexFunction(g, [0.0, 1.0, 1.0, 0.0])
    for bad in (0.5, 0.0, -1.0, math.nan):
        with pytest.raises(InvalidP):
            norm_p(u, bad)


def test_energy_on_path_examples():
    g = p4()
    assert lipschitz_energy(g, VertexFunction(g, [0, 1, 1, 0])) == 1.0
    assert lipschitz_energy(g, VertexFunction(g, [0, 1, 2, 0])) == 2.0
    assert lipschitz_energy(g, VertexFunction(g, [0, 0, 0, 0])) == 0.0


def test_energy_is_infinite_off_the_constraint_space():
    g = p4()
    assert lipschitz_energy(g, VertexFunction(g, [1, 0, 0, 0])) == math.inf
    assert lipschitz_energy(g, VertexFunction(g, [0, 1, 1, 1e-300])) == math.inf


def test_energy_uses_sqrt_weights():
    g = build_graph(3, [(0, 1, 4.0), (1, 2, 4.0)], [0, 2])
    assert lipschitz_energy(g, VertexFunction(g, [0.0, 1.0, 0.0])) == 2.0


def test_energy_one_homogeneity():
    rng = np.random.default_rng(7)
    for trial in range(30):
        g = random_connected_graph(9, 4, seed=trial, boundary_size=2)
        vals = rng.standard_normal(9)
        vals[list(g.boundary)] = 0.0
        base = lipschitz_energy(g, VertexFunction(g, vals))
        for c in (-2.0, -1.0, 0.5, 3.0):
            scaled = lipschitz_energy(g, VertexFunction(g, c * vals))
            assert scaled == pytest.approx(abs(c) * base, rel=1e-12)


def test_energy_convexity_spot_check():
    rng = np.random.default_rng(9)
    for trial in range(50):
        g = random_connected_graph(8, 6, seed=trial, boundary_size=3)
        u = rng.standard_normal(8)
        v = rng.standard_normal(8)
        u[list(g.boundary)] = 0.0
        v[list(g.boundary)] = 0.0
        ju = lipschitz_energy(g, VertexFunction(g, u))
        jv = lipschitz_energy(g, VertexFunction(g, v))
        jm = lipschitz_energy(g, VertexFunction(g, 0.5 * (u + v)))
        assert jm <= 0.5 * ju + 0.5 * jv + 1e-12
