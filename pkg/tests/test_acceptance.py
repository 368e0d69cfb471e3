"""Acceptance gate: the eleven headline checks, with pinned tolerances.

Each test prints one ``[criterion k] PASS`` line (visible under
``pytest -v -s``) after all of its assertions, including the runtime
budgets, have held.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from maxgrad.continuum import (
    basis_function,
    check_perimeter_lower_bound,
    disk_profile,
    distance_to_set,
    extinction_time,
    extreme_check_1d,
    inner_product,
    interval_profile,
    lshape_profile,
    rayleigh_quotient_sq,
    solve_ramp_ode,
    sphere_calibration,
    svc_set,
    variational_time,
)
from maxgrad.graphs import (
    CertificateInfeasibility,
    EdgeFunction,
    EigenCertificate,
    VertexFunction,
    asymptotic_profile,
    eigen_certificate,
    gradient_flow,
    graph_distance,
    grid_graph,
    lipschitz_energy,
    norm_p,
    path_graph,
    prox_lipschitz_energy,
    weighted_divergence,
    weighted_gradient,
)
from maxgrad.graphs.generators import random_connected_graph


def test_criterion_01_path_fixture():
    """Distance and the four certified eigenvectors on the 4-path."""
    start = time.perf_counter()
    g = path_graph(4)

    d = graph_distance(g)
    assert tuple(d.values) == (0.0, 1.0, 1.0, 0.0)

    for values in ([0.0, 0.5, 0.5, 0.0], [0.0, 1.0, 0.0, 0.0],
                   [0.0, 0.0, 1.0, 0.0], [0.0, -1.0, 1.0, 0.0]):
        cert = eigen_certificate(g, VertexFunction(g, values))
        assert isinstance(cert, EigenCertificate), values
        assert cert.eigenvalue == pytest.approx(1.0, abs=1e-12), values
        assert cert.residual_inf <= 1e-9, values
        assert cert.within(1e-9), values

    rejected = eigen_certificate(g, VertexFunction(g, [0.0, 1.0, 2.0, 0.0]))
    assert isinstance(rejected, CertificateInfeasibility)

    assert time.perf_counter() - start < 1.0
    print("[criterion 1] PASS")


def test_criterion_02_grid_flow_profile():
    """The 16 x 16 flow from a flat datum settles onto the distance."""
    start = time.perf_counter()
    g = grid_graph(16, 16, boundary="ring")
    d = graph_distance(g).function
    unit = d.values / np.linalg.norm(d.values)

    traj = gradient_flow(g, VertexFunction(g, np.ones(256)), tol=1e-6)
    profile, lam_est = asymptotic_profile(traj)

    assert np.max(np.abs(profile.values - unit)) <= 1e-3
    assert abs(lam_est - 1.0 / float(d.values @ d.values)) <= 1e-3

    assert time.perf_counter() - start < 60.0
    print("[criterion 2] PASS")


def test_criterion_03_prox_oracle_equivalence():
    """Primal-dual prox against a generic convex solver, 300 solves."""
    cp = pytest.importorskip("cvxpy")
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    # interior-point defaults leave ~1e-8 residuals, not enough for a
    # 1e-6 oracle; tighten until the reference is reliably ~1e-10
    settings = dict(tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12,
                    tol_ktratio=1e-9, max_iter=2000)
    worst = 0.0
    for trial in range(100):
        n = int(rng.integers(2, 7))
        max_extra = n * (n - 1) // 2 - (n - 1)
        extra = int(rng.integers(0, max_extra + 1))
        g = random_connected_graph(n, extra, seed=trial)
        f = rng.standard_normal(n)
        f_zeroed = f.copy()
        f_zeroed[g.boundary_mask] = 0.0
        for tau in (0.05, 0.3, 1.0):
            mine = prox_lipschitz_energy(g, VertexFunction(g, f), tau).values

            u = cp.Variable(n)
            t = cp.Variable()
            diffs = cp.multiply(g.sqrt_weights, u[g.edge_v] - u[g.edge_u])
            problem = cp.Problem(
                cp.Minimize(0.5 * cp.sum_squares(u - f_zeroed) + tau * t),
                [diffs <= t, -diffs <= t, u[list(g.boundary)] == 0.0])
            problem.solve(solver=cp.CLARABEL, **settings)
            assert problem.status == "optimal", (trial, tau, problem.status)
            ref = np.asarray(u.value)

            worst = max(worst, float(np.max(np.abs(mine - ref))))
    assert worst <= 1e-6

    assert time.perf_counter() - start < 120.0
    print("[criterion 3] PASS")


def test_criterion_04_interval_ramp():
    """Interval ramp is sqrt(3t) up to full opening at t = 1/3."""
    start = time.perf_counter()
    profile = interval_profile()
    ramp = solve_ramp_ode(profile)

    worst = max(abs(ramp.value_at(t) - math.sqrt(3.0 * t))
                for t in np.linspace(0.0, 1.0 / 3.0, 2001))
    assert worst <= 1e-6
    assert abs(ramp.t_star - 1.0 / 3.0) <= 1e-8
    assert abs(extinction_time(profile, ramp) - 1.0) <= 1e-8

    assert time.perf_counter() - start < 5.0
    print("[criterion 4] PASS")


def test_criterion_05_disk_ramp():
    """Disk ramp satisfies the implicit relation 2g^2 - g^3 = 6t/pi."""
    start = time.perf_counter()
    ramp = solve_ramp_ode(disk_profile())

    worst = 0.0
    for t, g in zip(ramp.times, ramp.values):
        if t > ramp.t_star:
            break
        worst = max(worst, abs(2.0 * g * g - g ** 3 - 6.0 * t / math.pi))
    assert worst <= 1e-6
    assert abs(ramp.t_star - math.pi / 6.0) <= 1e-6

    assert time.perf_counter() - start < 5.0
    print("[criterion 5] PASS")


def test_criterion_06_variational_inversion():
    """Moment-based time recovers the ODE clock on both model domains."""
    for profile in (interval_profile(), disk_profile()):
        ramp = solve_ramp_ode(profile)
        for t in np.linspace(0.0, ramp.t_star, 102)[1:-1]:
            g = ramp.value_at(float(t))
            assert abs(variational_time(profile, g) - t) <= 1e-6, \
                (profile.name, t)
    print("[criterion 6] PASS")


def test_criterion_07_lshape_profile_and_bound():
    """L-shape perimeter is the linear law with decay radius 8/(20-pi)."""
    profile = lshape_profile(1.0, 0.4)
    assert profile.bound_inradius == 8.0 / (20.0 - math.pi)

    # agreement with the closed form to the last bits (4 ulps of P(0)
    # absorb float associativity in the two algebraically equal forms)
    tol = 4.0 * math.ulp(4.0)
    for tau in np.linspace(0.0, 0.2, 2001):
        law = 4.0 * (1.0 - tau * (20.0 - math.pi) / 8.0)
        assert abs(profile.perimeter(float(tau)) - law) <= tol, tau

    report = check_perimeter_lower_bound(profile)
    assert report.ok
    print("[criterion 7] PASS")


def test_criterion_08_sawtooth_basis():
    """Exact Rayleigh quotients, odd-family orthogonality, positivity.

    The middle claim is false for the family as constructed: triangle
    waves share Fourier harmonics whenever the index ratio is odd/odd,
    e.g. <u_1, u_3> = -1/162 exactly.  The assertion is kept faithful
    to the stated claim, so this test fails by design; the module suite
    pins the orthogonality pattern that actually holds.
    """
    for n in range(1, 9):
        u = basis_function("odd", n)
        v = basis_function("even", n)
        assert rayleigh_quotient_sq(u) == Fraction(3, 2) * (2 * n) ** 2
        assert rayleigh_quotient_sq(v) == Fraction(3, 2) * (2 * n - 1) ** 2

    nonneg = [(kind, n)
              for kind in ("odd", "even")
              for n in range(1, 9)
              if min(basis_function(kind, n).values) >= 0]
    assert nonneg == [("even", 1)]

    us = {n: basis_function("odd", n) for n in range(1, 9)}
    nonzero = {(m, n): inner_product(us[m], us[n])
               for m in range(1, 9) for n in range(m + 1, 9)
               if inner_product(us[m], us[n]) != 0}
    assert not nonzero, (
        "odd sawtooth family is not pairwise orthogonal; "
        f"nonzero pairings: { {k: str(v) for k, v in nonzero.items()} }")
    print("[criterion 8] PASS")


def test_criterion_09_svc_distance_decomposition():
    """Level-6 fat-Cantor distance: measure and non-extremality witness."""
    s = svc_set(6)
    assert s.measure == Fraction(1, 2) + Fraction(1, 2 ** 7)

    f = distance_to_set(s)
    result = extreme_check_1d(f)
    assert not result.is_extreme
    assert (result.v_plus + result.v_minus) * Fraction(1, 2) == f
    assert result.v_plus.lipschitz == 1
    assert result.v_minus.lipschitz == 1
    assert result.v_plus != result.v_minus
    print("[criterion 9] PASS")


def test_criterion_10_sphere_calibrations():
    """Radial calibration profiles in dimensions one through five."""
    for n in range(1, 6):
        cal = sphere_calibration(n)
        assert cal.max_residual <= 1e-8, n
        assert cal.norm_gap <= 1e-8, n
        assert abs(cal.maximizer - (n + 1) / (2.0 * n)) <= 1e-8, n
    print("[criterion 10] PASS")


def test_criterion_11_property_suites():
    """Adjointness, homogeneity, non-expansiveness, Lipschitz bounds,
    and the layer-cake identity for the squared distance norm."""
    rng = np.random.default_rng(0)

    # gradient / divergence adjointness
    for trial in range(200):
        n = int(rng.integers(2, 13))
        g = random_connected_graph(n, int(rng.integers(0, n)), seed=trial)
        u = VertexFunction(g, rng.standard_normal(n))
        q = EdgeFunction(g, rng.standard_normal(2 * g.edge_count))
        lhs = float(q.values @ weighted_gradient(g, u).values)
        rhs = float(weighted_divergence(g, q).values @ u.values)
        assert abs(lhs + rhs) <= 1e-12 * (1.0 + norm_p(q, 2) * norm_p(u, 2))

    # one-homogeneity of the energy
    for trial in range(25):
        g = random_connected_graph(6, 3, seed=1000 + trial)
        f = rng.standard_normal(6)
        f[g.boundary_mask] = 0.0
        u = VertexFunction(g, f)
        base = lipschitz_energy(g, u)
        for c in (-2.0, -1.0, 0.5, 3.0):
            scaled = lipschitz_energy(g, VertexFunction(g, c * f))
            assert abs(scaled - abs(c) * base) <= 1e-12 * max(1.0, base)

    # prox non-expansiveness
    for trial in range(20):
        g = random_connected_graph(7, 4, seed=2000 + trial)
        f = rng.standard_normal(7)
        h = rng.standard_normal(7)
        uf = prox_lipschitz_energy(g, VertexFunction(g, f), 0.4).values
        uh = prox_lipschitz_energy(g, VertexFunction(g, h), 0.4).values
        ff, hh = f.copy(), h.copy()
        ff[g.boundary_mask] = 0.0
        hh[g.boundary_mask] = 0.0
        assert np.linalg.norm(uf - uh) <= np.linalg.norm(ff - hh) + 1e-6

    # the distance field is 1-Lipschitz in the edge metric
    for trial in range(100):
        n = int(rng.integers(2, 13))
        g = random_connected_graph(n, int(rng.integers(0, n)),
                                   seed=3000 + trial)
        d = graph_distance(g).function
        grad = weighted_gradient(g, d)
        assert float(np.max(np.abs(grad.values))) <= 1.0 + 1e-12

    # squared distance norm equals the second perimeter moment
    interval = interval_profile()
    disk = disk_profile()
    assert abs(interval.d_norm2_sq - 2.0 / 3.0) <= 1e-10
    assert abs(disk.d_norm2_sq - math.pi / 6.0) <= 1e-10
    for profile in (interval, disk):
        full_moment = profile.moment(2, profile.inradius)
        assert abs(profile.d_norm2_sq - full_moment) <= 1e-10
    print("[criterion 11] PASS")
