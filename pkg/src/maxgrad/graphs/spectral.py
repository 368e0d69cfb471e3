"""Eigenvalue certificates, proximal steps, and decay profiles.

Everything here revolves around the subdifferential of the Lipschitz
energy.  An edge flow q lies in the subdifferential at u (through the
divergence) exactly when three conditions hold: unit total mass over
ordered pairs, support restricted to the edges where the weighted
gradient attains its maximum, and sign agreement with the gradient on
those edges.  A function u is an eigenfunction with eigenvalue
lambda = J(u) / <u, u> when some such q additionally satisfies the
balance equation lambda u(x) = -div q(x) at every unconstrained vertex.
Finding q is a linear feasibility problem, solved here with HiGHS.

The proximal map of tau * J is computed by an accelerated primal-dual
iteration (the quadratic term is 1-strongly convex) with two finishing
moves that take the iterate to machine accuracy once the geometry has
settled: an active-set solve that enforces stationarity and saturation
exactly on the currently maximal edges, and a minimum-mass linear program
that certifies when the prox has already collapsed to zero.  Termination
is always by the measured primal-dual gap, never by iteration count alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from ..errors import (
    BoundaryViolation,
    EmptyTrajectory,
    NonconvergedAfterMaxIters,
    NotInUnitBall,
    OutOfRange,
    ZeroFunction,
)
from .core import (
    EdgeFunction,
    VertexFunction,
    WeightedGraph,
    norm_p,
    lipschitz_energy,
    weighted_divergence,
    weighted_gradient,
)

__all__ = [
    "SubgradientDiagnostics",
    "EigenCertificate",
    "CertificateInfeasibility",
    "ExtremePointResult",
    "FlowTrajectory",
    "subgradient_membership",
    "eigen_certificate",
    "extreme_point_check",
    "prox_lipschitz_energy",
    "gradient_flow",
    "asymptotic_profile",
]

# relative band for membership in the set of maximal-gradient edges
_EMAX_RTOL = 1e-9


# ---------------------------------------------------------------------------
# subdifferential membership and eigenvalue certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgradientDiagnostics:
    """Violation magnitudes for the three subdifferential conditions.

    norm_gap:
        |total mass of q over ordered pairs - 1|.
    support_violation:
        Largest |q| on an ordered pair whose gradient is not maximal.
    parallel_violation:
        Largest wrong-signed q on a maximal pair, i.e. the magnitude of
        mass pointing against the gradient.
    """

    norm_gap: float
    support_violation: float
    parallel_violation: float
    energy: float

    def within(self, tol: float) -> bool:
        return (self.norm_gap <= tol
                and self.support_violation <= tol
                and self.parallel_violation <= tol)


@dataclass(frozen=True)
class EigenCertificate:
    """A validated flow certifying the eigenfunction relation for u.

    residual_inf is the largest interior violation of the balance
    equation lambda u = -div q; the remaining fields repeat the
    subdifferential diagnostics for the certifying q.
    """

    eigenvalue: float
    q: EdgeFunction
    residual_inf: float
    norm_gap: float
    support_violation: float
    parallel_violation: float

    def within(self, tol: float) -> bool:
        return (self.residual_inf <= tol
                and self.norm_gap <= tol
                and self.support_violation <= tol
                and self.parallel_violation <= tol)


@dataclass(frozen=True)
class CertificateInfeasibility:
    """Proof record that no certifying flow exists at the given tolerance."""

    eigenvalue: float
    reason: str
    solver_status: int


@dataclass(frozen=True)
class ExtremePointResult:
    """Outcome of the extreme-point test on the unit energy ball."""

    is_extreme: bool
    witness: Optional[int] = None


def _validated_values(graph: WeightedGraph, u: VertexFunction) -> np.ndarray:
    vals = u.values if isinstance(u, VertexFunction) else np.asarray(u, float)
    if not np.any(vals):
        raise ZeroFunction("function is identically zero")
    if np.any(vals[graph.boundary_mask] != 0.0):
        raise BoundaryViolation("function must vanish on the constraint set")
    return vals


def _max_edge_mask(graph: WeightedGraph, grad_forward: np.ndarray,
                   energy: float) -> np.ndarray:
    """Stored edges whose gradient magnitude ties the maximum."""
    return np.abs(grad_forward) >= energy * (1.0 - _EMAX_RTOL)


def subgradient_membership(graph: WeightedGraph, u: VertexFunction,
                           q: EdgeFunction, tol: float = 1e-9
                           ) -> SubgradientDiagnostics:
    """Measure how far q is from the subdifferential of the energy at u.

    The three reported numbers are zero exactly when -div q is a
    subgradient: unit mass, support on maximal edges, and sign agreement
    with the gradient there.  ``tol`` is only a convenience threshold for
    ``within``; the magnitudes themselves are tolerance-free.
    """
    _validated_values(graph, u)
    if q.graph is not graph:
        raise ValueError("edge function belongs to a different graph")
    grad = weighted_gradient(graph, u)
    energy = float(np.max(np.abs(grad.forward)))
    mask = _max_edge_mask(graph, grad.forward, energy)

    norm_gap = abs(norm_p(q, 1) - 1.0)

    pair_mask = np.concatenate([mask, mask])
    off = np.abs(q.values[~pair_mask])
    support_violation = float(off.max()) if off.size else 0.0

    signs = np.sign(grad.values[pair_mask])
    wrong = -q.values[pair_mask] * signs
    parallel_violation = float(max(0.0, wrong.max())) if wrong.size else 0.0

    return SubgradientDiagnostics(norm_gap, support_violation,
                                  parallel_violation, energy)


def eigen_certificate(graph: WeightedGraph, u: VertexFunction,
                      tol: float = 1e-9
                      ) -> EigenCertificate | CertificateInfeasibility:
    """Search for a flow certifying that u is an eigenfunction.

    The candidate eigenvalue is fixed by u itself,
    lambda = J(u) / <u, u>.  A certifying flow must put nonnegative mass
    on the maximal-gradient edges, signed along the gradient, satisfy the
    balance equation at every unconstrained vertex, and carry unit total
    mass.  These are linear constraints in the per-edge magnitudes, so
    feasibility is decided exactly (up to solver tolerance) by an LP.

    Returns an :class:`EigenCertificate` on success, otherwise a
    :class:`CertificateInfeasibility` carrying the solver status.
    """
    vals = _validated_values(graph, u)
    grad = weighted_gradient(graph, u)
    energy = float(np.max(np.abs(grad.forward)))
    lam = energy / float(vals @ vals)
    mask = _max_edge_mask(graph, grad.forward, energy)
    cand = np.flatnonzero(mask)
    signs = np.sign(grad.forward[cand])
    sw = graph.sqrt_weights[cand]

    interior = graph.interior
    n_int = len(interior)
    row_of = {int(v): i for i, v in enumerate(interior)}

    # balance rows: lambda u(x) = -div q(x); a stored edge (a, b) carrying
    # signed mass s*m contributes -2 w^(1/2) s m at a and +2 w^(1/2) s m at b
    rows, cols, data = [], [], []
    for j, k in enumerate(cand):
        a, b = int(graph.edge_u[k]), int(graph.edge_v[k])
        coeff = 2.0 * sw[j] * signs[j]
        if a in row_of:
            rows.append(row_of[a]); cols.append(j); data.append(-coeff)
        if b in row_of:
            rows.append(row_of[b]); cols.append(j); data.append(coeff)
    # unit-mass row over ordered pairs
    rows.extend([n_int] * len(cand))
    cols.extend(range(len(cand)))
    data.extend([2.0] * len(cand))

    a_eq = sp.csr_matrix((data, (rows, cols)), shape=(n_int + 1, len(cand)))
    b_eq = np.concatenate([lam * vals[interior], [1.0]])

    # HiGHS rejects feasibility tolerances below 1e-10.
    feas = min(max(tol * 1e-2, 1e-10), 1e-9)
    res = linprog(c=np.zeros(len(cand)), A_eq=a_eq, b_eq=b_eq,
                  bounds=(0, None), method="highs",
                  options={"primal_feasibility_tolerance": feas,
                           "dual_feasibility_tolerance": feas})
    if res.status == 2:
        return CertificateInfeasibility(
            eigenvalue=lam,
            reason="no unit-mass gradient-aligned flow balances lambda*u "
                   "at the unconstrained vertices",
            solver_status=2)
    if res.status != 0:
        raise NonconvergedAfterMaxIters(
            f"certificate LP terminated with status {res.status}", math.nan)

    forward = np.zeros(graph.edge_count)
    forward[cand] = signs * res.x
    q = EdgeFunction.from_forward(graph, forward)

    div = weighted_divergence(graph, q).values
    residual_inf = float(np.max(np.abs(lam * vals + div)[interior])) if n_int else 0.0
    diag = subgradient_membership(graph, u, q, tol)
    return EigenCertificate(
        eigenvalue=lam,
        q=q,
        residual_inf=residual_inf,
        norm_gap=diag.norm_gap,
        support_violation=diag.support_violation,
        parallel_violation=diag.parallel_violation)


def extreme_point_check(graph: WeightedGraph, u: VertexFunction,
                        tol: float = 1e-9) -> ExtremePointResult:
    """Decide whether u is an extreme point of the unit energy ball.

    u (which must have energy at most 1 + tol) is extreme exactly when
    every vertex can reach the constraint set through edges on which the
    gradient magnitude equals one.  The check is a breadth-first sweep of
    the saturated subgraph seeded on the constraint set; the witness of a
    negative answer is the lowest-index vertex left stranded, around
    which u can be perturbed both ways without leaving the ball.
    """
    vals = u.values if isinstance(u, VertexFunction) else np.asarray(u, float)
    energy = lipschitz_energy(graph, vals)
    if energy > 1.0 + tol:
        raise NotInUnitBall(f"energy {energy} exceeds 1 + {tol}")

    grad_fwd = graph.sqrt_weights * (vals[graph.edge_v] - vals[graph.edge_u])
    saturated = np.abs(np.abs(grad_fwd) - 1.0) <= tol

    reached = graph.boundary_mask.copy()
    stack = list(graph.boundary)
    while stack:
        x = stack.pop()
        for k in graph.incident_edges(x):
            if not saturated[k]:
                continue
            y = int(graph.edge_v[k]) if int(graph.edge_u[k]) == x else int(graph.edge_u[k])
            if not reached[y]:
                reached[y] = True
                stack.append(y)

    if reached.all():
        return ExtremePointResult(is_extreme=True)
    witness = int(np.flatnonzero(~reached)[0])
    return ExtremePointResult(is_extreme=False, witness=witness)


# ---------------------------------------------------------------------------
# proximal map
# ---------------------------------------------------------------------------

def _project_l1(v: np.ndarray, radius: float) -> np.ndarray:
    """Euclidean projection onto the l1 ball of the given radius."""
    if radius <= 0.0:
        return np.zeros_like(v)
    mags = np.abs(v)
    total = mags.sum()
    if total <= radius:
        return v
    mu = np.sort(mags)[::-1]
    cums = np.cumsum(mu) - radius
    idx = np.arange(1, len(mu) + 1)
    rho = np.max(np.flatnonzero(mu - cums / idx > 0.0))
    theta = cums[rho] / (rho + 1.0)
    w = np.maximum(mags - theta, 0.0)
    # theta carries absolute rounding on the scale of max|v|, which for
    # large inputs can leave the result outside the ball by far more than
    # an ulp of the radius; feasibility matters more than an exactly
    # Euclidean projection (an infeasible dual breaks weak duality), so
    # scale back onto the sphere.
    total = w.sum()
    if total > radius:
        w *= radius / total
    return np.sign(v) * w


class _ProxWorkspace:
    """Arrays and operators shared by the primal-dual iteration."""

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.eu = graph.edge_u
        self.ev = graph.edge_v
        self.sw = graph.sqrt_weights
        self.n = graph.vertex_count
        self.bmask = graph.boundary_mask
        self.interior = graph.interior
        self.norm_bound = graph.gradient_norm_bound()

    def forward_grad(self, u: np.ndarray) -> np.ndarray:
        return self.sw * (u[self.ev] - u[self.eu])

    def adjoint(self, z: np.ndarray) -> np.ndarray:
        """K* for forward coordinates: minus divergence of the antisymmetric
        extension, equal to 2 * (incidence transpose)."""
        t = self.sw * z
        out = np.bincount(self.ev, weights=t, minlength=self.n)
        out -= np.bincount(self.eu, weights=t, minlength=self.n)
        return 2.0 * out

    def duality_gap(self, u: np.ndarray, q: np.ndarray, f: np.ndarray,
                    tau: float) -> float:
        """Primal value minus dual value for feasible (u, q)."""
        diff = u - f
        primal = 0.5 * float(diff @ diff)
        if tau > 0.0:
            primal += tau * float(np.max(np.abs(self.forward_grad(u))))
        h = self.adjoint(q)
        h[self.bmask] = 0.0
        dual = -0.5 * float(h @ h) + float(h @ f)
        return primal - dual


def _polish_candidate(ws: _ProxWorkspace, f: np.ndarray, tau: float,
                      u: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Exact solve on the active set suggested by the current iterate.

    Stationarity of the prox forces u = f + div q at unconstrained
    vertices with q supported, gradient-aligned, and of total mass tau on
    the edges where |grad u| is maximal and shared.  Fixing that active
    set and the gradient signs turns the optimality system into a square
    linear system in the edge masses and the common gradient level.  The
    returned candidate is not trusted: the caller re-measures its duality
    gap before accepting.
    """
    au = ws.forward_grad(u)
    s_hat = float(np.max(np.abs(au)))
    if s_hat <= 0.0:
        return None
    band = max(1e-6 * s_hat, 1e-12)
    active = np.flatnonzero(np.abs(au) >= s_hat - band)
    # edges pinned between two constrained vertices cannot be saturated
    # at a positive level by a function vanishing there, unless weights
    # conspire; they carry no information for the interior solve
    free_end = ~(ws.bmask[ws.eu[active]] & ws.bmask[ws.ev[active]])
    active = active[free_end]
    na = len(active)
    if na == 0 or na > 4000:
        return None
    signs = np.sign(au[active])

    eu, ev, sw = ws.eu[active], ws.ev[active], ws.sw[active]
    interior_mask = ~ws.bmask

    # u(m) = f + C m with column j touching only the endpoints of edge j
    c_mat = np.zeros((ws.n, na))
    coeff = 2.0 * sw * signs
    c_mat[eu, np.arange(na)] += coeff * interior_mask[eu]
    c_mat[ev, np.arange(na)] -= coeff * interior_mask[ev]

    # saturation rows: sw*(u[ev]-u[eu]) = signs * s
    m_rows = sw[:, None] * (c_mat[ev, :] - c_mat[eu, :])
    rhs_sat = -sw * (f[ev] - f[eu])

    sys_a = np.zeros((na + 1, na + 1))
    sys_a[:na, :na] = m_rows
    sys_a[:na, na] = -signs
    sys_a[na, :na] = 2.0
    rhs = np.concatenate([rhs_sat, [tau]])

    try:
        sol = np.linalg.solve(sys_a, rhs)
    except np.linalg.LinAlgError:
        sol = None
    # A valid mass vector is nonnegative with total tau/2.  Symmetric
    # active sets make the system singular, and LAPACK then need not
    # raise: it can hand back the solution plus a large multiple of the
    # null direction.  Contamination that keeps the masses positive is
    # harmless -- the null direction moves neither u nor the dual value
    # -- but once it drives a mass negative the clamp below would wreck
    # the candidate, so redo the solve as a rank-revealing least squares,
    # whose minimum-norm answer drops the null component.
    if sol is None or not np.all(np.isfinite(sol)) \
            or sol[:na].min() < -1e-7 * tau or sol[:na].max() > tau:
        sol, *_ = np.linalg.lstsq(sys_a, rhs, rcond=1e-9)
    if not np.all(np.isfinite(sol)):
        return None

    masses = np.maximum(sol[:na], 0.0)
    total = 2.0 * masses.sum()
    if total > tau and total > 0.0:
        masses *= tau / total

    u_cand = f + c_mat @ masses
    u_cand[ws.bmask] = 0.0
    q_cand = np.zeros(ws.graph.edge_count)
    q_cand[active] = signs * masses
    return u_cand, q_cand


def _zero_candidate(ws: _ProxWorkspace, f: np.ndarray, tau: float
                    ) -> tuple[np.ndarray, np.ndarray] | None:
    """Check whether the prox output is exactly zero.

    Zero is optimal iff some flow of total mass at most tau balances f at
    every unconstrained vertex.  The least-mass balancing flow is a linear
    program; when its optimum fits inside the mass budget the prox has
    provably collapsed and (0, that flow) is returned.
    """
    m = ws.graph.edge_count
    interior = ws.interior
    rows, cols, data = [], [], []
    row_of = {int(v): i for i, v in enumerate(interior)}
    for k in range(m):
        a, b = int(ws.eu[k]), int(ws.ev[k])
        if a in row_of:
            rows.append(row_of[a]); cols.append(k); data.append(-2.0 * ws.sw[k])
        if b in row_of:
            rows.append(row_of[b]); cols.append(k); data.append(2.0 * ws.sw[k])
    m_int = sp.csr_matrix((data, (rows, cols)), shape=(len(interior), m))
    a_eq = sp.hstack([m_int, -m_int], format="csr")
    res = linprog(c=np.ones(2 * m), A_eq=a_eq, b_eq=f[interior],
                  bounds=(0, None), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    if res.status != 0:
        return None
    q = res.x[:m] - res.x[m:]
    if 2.0 * np.abs(q).sum() > tau * (1.0 + 1e-9) + 1e-15:
        return None
    return np.zeros(ws.n), q


def prox_lipschitz_energy(
    graph: WeightedGraph,
    f: VertexFunction,
    tau: float,
    tol: float | None = None,
    *,
    max_iters: int = 500_000,
    warm_dual: np.ndarray | None = None,
    return_dual: bool = False,
):
    """Proximal map of tau times the Lipschitz energy at f.

    Minimizes ``0.5 * <u - f, u - f> + tau * J(u)`` over functions
    vanishing on the constraint set; f is projected onto that space
    first.  The iteration is the accelerated primal-dual scheme for a
    1-strongly-convex quadratic coupled through the weighted gradient,
    with the dual variable projected onto the tau-mass ball each step.
    Convergence is declared when the primal-dual gap of a feasible pair
    drops below ``tol`` (default ``1e-14 * max(1, <f, f>)``), which bounds
    the squared distance to the true prox by ``2 * tol``.

    Parameters
    ----------
    warm_dual:
        Forward-orientation dual values from a previous related solve,
        e.g. the preceding implicit time step of a flow.
    return_dual:
        Also return the forward dual values, for warm starting.

    Raises
    ------
    NonconvergedAfterMaxIters
        If the gap has not closed after ``max_iters`` iterations; the
        exception carries the last measured gap.
    """
    if tau < 0.0 or not math.isfinite(tau):
        raise OutOfRange(f"prox parameter must be finite and nonnegative, got {tau}")

    ws = _ProxWorkspace(graph)
    f_arr = np.asarray(getattr(f, "values", f), float).copy()
    f_arr[ws.bmask] = 0.0

    fn2 = float(f_arr @ f_arr)
    if tau == 0.0 or fn2 == 0.0:
        out = VertexFunction(graph, f_arr)
        if return_dual:
            return out, np.zeros(graph.edge_count)
        return out
    if tol is None:
        tol = 1e-14 * max(1.0, fn2)

    radius = 0.5 * tau
    t_p = 1.0 / ws.norm_bound
    s_d = 1.0 / ws.norm_bound

    u = f_arr.copy()
    q = (np.asarray(warm_dual, float).copy() if warm_dual is not None
         else np.zeros(graph.edge_count))
    q = _project_l1(q, radius)
    ubar = u.copy()

    # zero output is plausible only when tau can pay for the whole descent
    zero_possible = tau >= fn2 / max(lipschitz_energy(graph, f_arr), 1e-300) * (1 - 1e-9)
    zero_tried = False

    gap = math.inf
    next_check = 8
    it = 0
    while it < max_iters:
        it += 1
        q = _project_l1(q + s_d * ws.forward_grad(ubar), radius)
        unew = (u - t_p * ws.adjoint(q) + t_p * f_arr) / (1.0 + t_p)
        unew[ws.bmask] = 0.0
        theta = 1.0 / math.sqrt(1.0 + 2.0 * t_p)
        ubar = unew + theta * (unew - u)
        u = unew
        t_p *= theta
        s_d /= theta

        if it < next_check:
            continue
        next_check = min(it * 2, it + 2000)

        gap = ws.duality_gap(u, q, f_arr, tau)
        if gap <= tol:
            break

        cand = _polish_candidate(ws, f_arr, tau, u)
        if cand is not None:
            cgap = ws.duality_gap(cand[0], cand[1], f_arr, tau)
            if cgap <= tol:
                u, q = cand
                gap = cgap
                break

        if zero_possible and not zero_tried:
            unorm = math.sqrt(float(u @ u))
            if unorm <= 0.05 * math.sqrt(fn2) or it >= 4096:
                zero_tried = True
                zcand = _zero_candidate(ws, f_arr, tau)
                if zcand is not None:
                    zgap = ws.duality_gap(zcand[0], zcand[1], f_arr, tau)
                    if zgap <= tol:
                        u, q = zcand
                        gap = zgap
                        break
    else:
        if zero_possible and not zero_tried:
            zcand = _zero_candidate(ws, f_arr, tau)
            if zcand is not None:
                zgap = ws.duality_gap(zcand[0], zcand[1], f_arr, tau)
                if zgap <= tol:
                    u, q = zcand
                    gap = zgap
        if gap > tol:
            raise NonconvergedAfterMaxIters(
                f"primal-dual gap {gap:.3e} above tolerance {tol:.3e} "
                f"after {max_iters} iterations", gap)

    out = VertexFunction(graph, u)
    if return_dual:
        return out, q
    return out


# ---------------------------------------------------------------------------
# implicit gradient flow and asymptotic profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowTrajectory:
    """Implicit-Euler trajectory of the energy descent flow.

    states[k] is the solution at times[k]; norms and energies record
    <u, u>^(1/2) and J(u) along the way.  extinction_time is the first
    sampled time at which the norm fell to the extinction tolerance, or
    None if the flow was not integrated that far.  profile is the
    normalized last state before extinction with its eigenvalue estimate,
    the squared Rayleigh quotient; both are None when no positive state
    was ever sampled.
    """

    times: np.ndarray
    states: tuple[VertexFunction, ...]
    norms: np.ndarray
    energies: np.ndarray
    extinction_time: Optional[float]
    extinction_tol: float
    profile: Optional[VertexFunction]
    profile_eigenvalue: Optional[float]

    @property
    def graph(self) -> WeightedGraph:
        return self.states[0].graph


def gradient_flow(
    graph: WeightedGraph,
    f: VertexFunction,
    step: float | None = None,
    tol: float = 1e-9,
    *,
    prox_tol: float | None = None,
    max_steps: int = 100_000,
) -> FlowTrajectory:
    """Integrate the steepest-descent flow of the Lipschitz energy.

    Each time step solves one backward-Euler equation, i.e. one prox with
    parameter ``step``.  Integration starts from f projected onto the
    constraint space and stops at the first step whose norm is at most
    ``tol`` (extinction happens in finite time for every datum).  The
    default step is one percent of the natural time scale
    ``<f, f> / J(f)``.

    Warm starting each prox with the previous dual flow makes the cost of
    a step essentially independent of where the trajectory is.
    """
    ws_bmask = graph.boundary_mask
    f_arr = np.asarray(getattr(f, "values", f), float).copy()
    f_arr[ws_bmask] = 0.0
    u0 = VertexFunction(graph, f_arr)

    norm0 = float(np.linalg.norm(f_arr))
    times = [0.0]
    states = [u0]
    norms = [norm0]
    energies = [lipschitz_energy(graph, f_arr)]

    extinction: Optional[float] = None
    if norm0 <= tol:
        extinction = 0.0
    else:
        if step is None:
            step = 0.01 * norm0 * norm0 / energies[0]
        if step <= 0 or not math.isfinite(step):
            raise OutOfRange(f"step must be positive and finite, got {step}")
        if prox_tol is None:
            # Tight enough that a hundred steps of accumulated prox error
            # stay far below the scale of the terminal profile, yet above
            # the rounding floor of the gap evaluation (which is a
            # difference of quantities of size about <f, f>).
            prox_tol = 1e-13 * max(1.0, norm0 * norm0)

        u = states[0]
        dual: np.ndarray | None = None
        for k in range(1, max_steps + 1):
            u, dual = prox_lipschitz_energy(
                graph, u, step, prox_tol, warm_dual=dual, return_dual=True)
            t = k * step
            nrm = float(np.linalg.norm(u.values))
            times.append(t)
            states.append(u)
            norms.append(nrm)
            energies.append(lipschitz_energy(graph, u.values))
            if nrm <= tol:
                extinction = t
                break
        else:
            raise NonconvergedAfterMaxIters(
                f"flow not extinct after {max_steps} steps "
                f"(norm {norms[-1]:.3e}, extinction tolerance {tol:.3e})",
                norms[-1])

    profile: Optional[VertexFunction] = None
    profile_eig: Optional[float] = None
    norms_arr = np.array(norms)
    alive = np.flatnonzero(norms_arr > tol)
    if alive.size:
        # prefer a sample a few decrements above the extinction tolerance:
        # the direction is already settled there, and normalizing a state
        # of size ~tol would amplify the prox error into the profile
        last = int(alive[-1])
        if len(norms_arr) >= 2:
            cushion = 4.0 * abs(norms_arr[-2] - norms_arr[-1])
            comfortable = np.flatnonzero(norms_arr >= max(tol, cushion))
            if comfortable.size:
                last = int(comfortable[-1])
        vals = states[last].values / norms_arr[last]
        profile = VertexFunction(graph, vals)
        profile_eig = (energies[last] / norms_arr[last]) ** 2

    return FlowTrajectory(
        times=np.array(times),
        states=tuple(states),
        norms=norms_arr,
        energies=np.array(energies),
        extinction_time=extinction,
        extinction_tol=tol,
        profile=profile,
        profile_eigenvalue=profile_eig,
    )


def asymptotic_profile(trajectory: FlowTrajectory
                       ) -> tuple[VertexFunction, float]:
    """Normalized shape of the flow just before extinction.

    Returns the latest sampled state that still sits comfortably above
    the extinction tolerance, normalized to unit norm, together with its
    eigenvalue estimate: the square of the Rayleigh quotient
    J(u) / <u, u>^(1/2), which is scale-free and equals the decay rate of
    the terminal phase.

    Raises
    ------
    EmptyTrajectory
        When the trajectory never held a state above the tolerance, e.g.
        for a zero initial datum.
    """
    if trajectory.profile is None or trajectory.profile_eigenvalue is None:
        raise EmptyTrajectory("no state above the extinction tolerance")
    return trajectory.profile, trajectory.profile_eigenvalue
