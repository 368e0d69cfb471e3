"""Explicit continuum solutions built from perimeter profiles.

Starting the steepest-descent flow of the maximal-gradient energy from
the inradius-height plateau produces a truncated-cone solution whose
shape is governed by a scalar ramp g(t): the solution at time t equals
min(d(x) / g(t), r) until g reaches 1, after which the cone d shrinks
linearly to extinction.  The ramp solves the ODE

    g'(t) = g(t)^2 / I2(g(t)),      g(0) = 0,

where I2 is the second perimeter moment of the domain.  Everything here
reduces to the moments I_k(g) = integral of P(t) t^k over [0, r g], so
the same code serves any domain with a known profile.

The module also carries the geometric perimeter lower bound
P(tau) >= P(0) (1 - tau / r~)^(n-1) and its integrated form, used to
bracket I2 from below for domains where only coarse data is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import PchipInterpolator

from ..errors import (DegenerateProfile, InputError, MissingBoundParams,
                      NumericalError, OutOfRange)
from .profiles import DomainProfile

__all__ = [
    "LevelSet",
    "PerimeterBoundReport",
    "RampTrajectory",
    "check_perimeter_lower_bound",
    "explicit_flow_value",
    "extinction_time",
    "level_set_threshold",
    "perimeter_moment",
    "perimeter_moment_lower_bound",
    "solve_ramp_ode",
    "variational_time",
]

_QUAD_TOL = 1e-12


def perimeter_moment(profile: DomainProfile, k: int, g: float) -> float:
    """I_k(g): integral of P(t) t^k for t in [0, r g], g a relative height."""
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise InputError(f"moment order must be a nonnegative integer, got {k}")
    if not (0.0 <= g <= 1.0 + 1e-12):
        raise OutOfRange(f"relative height g={g} outside [0, 1]")
    return profile.moment(int(k), profile.inradius * min(float(g), 1.0))


def perimeter_moment_lower_bound(profile: DomainProfile, g: float) -> float:
    """Closed-form lower bound for the second moment I_2(g).

    Integrates P(t) >= P(0) (1 - t/r~)^(n-1) against t^2, where r~ is the
    profile's ``bound_inradius``.  Valid while the absolute distance r g
    stays within ``bound_range``.
    """
    if profile.bound_inradius is None or profile.bound_range is None:
        raise MissingBoundParams(
            f"profile {profile.name} carries no bound_inradius/bound_range")
    if not (0.0 <= g <= 1.0 + 1e-12):
        raise OutOfRange(f"relative height g={g} outside [0, 1]")
    tau = profile.inradius * float(g)
    if tau > profile.bound_range * (1 + 1e-12):
        raise OutOfRange(
            f"distance {tau} exceeds the bound's validity range "
            f"{profile.bound_range}")
    n = profile.dim
    r_t = profile.bound_inradius
    s = min(tau / r_t, 1.0)
    c = 1.0 - s
    bracket = (2.0 / ((n + 1) * (n + 2)) * (1.0 - c ** (n + 2))
               - 2.0 / (n + 1) * s * c ** (n + 1)
               - s * s * c ** n)
    return profile.perimeter(0.0) * r_t ** 3 / n * bracket


@dataclass(frozen=True)
class PerimeterBoundReport:
    """Result of sampling the pointwise perimeter lower bound."""
    ok: bool
    worst_margin: float
    worst_tau: float
    samples: int


def check_perimeter_lower_bound(profile: DomainProfile,
                                samples: int = 256) -> PerimeterBoundReport:
    """Sample P(tau) - P(0)(1 - tau/r~)^(n-1) over the bound's range.

    The margin should be nonnegative for every convex domain and for the
    model domains shipped here; a negative worst margin flags a profile
    whose claimed bound parameters are wrong.
    """
    if profile.bound_inradius is None or profile.bound_range is None:
        raise MissingBoundParams(
            f"profile {profile.name} carries no bound_inradius/bound_range")
    if samples < 2:
        raise InputError("need at least 2 samples")
    p0 = profile.perimeter(0.0)
    n = profile.dim
    worst_margin = math.inf
    worst_tau = 0.0
    for tau in np.linspace(0.0, profile.bound_range, samples):
        floor = p0 * max(1.0 - tau / profile.bound_inradius, 0.0) ** (n - 1)
        margin = float(profile.perimeter(float(tau)) - floor)
        if margin < worst_margin:
            worst_margin = margin
            worst_tau = float(tau)
    return PerimeterBoundReport(ok=bool(worst_margin >= -1e-12 * p0),
                                worst_margin=worst_margin,
                                worst_tau=worst_tau, samples=samples)


class RampTrajectory:
    """Solution of the ramp ODE g' = g^2 / I2(g) up to g = 1.

    ``t_star`` is the time at which the ramp reaches 1 (the truncated
    cone becomes the full cone); ``t_star_separable`` is the same time
    recomputed from the separable form t = integral of I2(h)/h^2, kept
    as an independent consistency check.  ``small_time_coeff`` is the
    cubic coefficient c3 with I2(g) ~ c3 g^3, which gives the startup
    behavior g(t) ~ sqrt(2 t / c3).
    """

    def __init__(self, times: np.ndarray, values: np.ndarray, t_star: float,
                 t_star_separable: float, small_time_coeff: float,
                 t0: float, g0: float, early, dense):
        self.times = times
        self.values = values
        self.t_star = float(t_star)
        self.t_star_separable = float(t_star_separable)
        self.small_time_coeff = float(small_time_coeff)
        self._t0 = float(t0)
        self._g0 = float(g0)
        self._early = early      # interpolant of g^2 on [0, t0]
        self._dense = dense      # ODE dense output on [t0, t_star]

    def value_at(self, t: float) -> float:
        """Ramp height at time t (0 before the start, 1 after t_star)."""
        if t <= 0.0:
            return 0.0
        if t >= self.t_star:
            return 1.0
        if t <= self._t0:
            return math.sqrt(max(float(self._early(t)), 0.0))
        return min(float(self._dense(t)[0]), 1.0)

    def __repr__(self) -> str:
        return (f"RampTrajectory(t_star={self.t_star:.12g}, "
                f"small_time_coeff={self.small_time_coeff:.12g})")


def solve_ramp_ode(profile: DomainProfile, tol: float = 1e-12,
                   n_samples: int = 513) -> RampTrajectory:
    """Integrate the ramp ODE for the given domain profile.

    The ODE is singular at g = 0 (the right-hand side behaves like
    1/(c3 g)), so the startup is handled exactly through the separable
    form: t(g) = integral of I2(h)/h^2 dh, whose integrand is regular at
    0.  A dense table of that map on [0, g0] covers early times, and a
    high-order integrator takes over from (t(g0), g0) with a terminal
    event at g = 1.
    """
    r = profile.inradius

    def second_moment(g: float) -> float:
        return profile.moment(2, r * min(max(g, 0.0), 1.0))

    c3 = second_moment(1e-4) / 1e-12
    if not (c3 > 0 and math.isfinite(c3)):
        raise DegenerateProfile(
            f"second moment of {profile.name} does not vanish cubically")

    g0 = 1e-3
    # Cumulative separable map t(g) on [0, g0]; integrand I2(h)/h^2 ~ c3 h.
    g_nodes = np.linspace(0.0, g0, 129)
    t_nodes = np.zeros_like(g_nodes)
    for i in range(1, len(g_nodes)):
        seg, _ = quad(lambda h: second_moment(h) / h ** 2,
                      g_nodes[i - 1], g_nodes[i],
                      epsabs=_QUAD_TOL * g0, epsrel=_QUAD_TOL)
        t_nodes[i] = t_nodes[i - 1] + seg
    t0 = float(t_nodes[-1])
    # Interpolate g^2 against t: near 0 that pair is linear (g ~ sqrt(t)),
    # so a monotone cubic through it stays accurate where g itself has a
    # square-root cusp.
    early = PchipInterpolator(t_nodes, g_nodes ** 2)

    tail, _ = quad(lambda h: second_moment(h) / h ** 2, g0, 1.0,
                   epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
    t_star_separable = t0 + float(tail)

    def rhs(t, y):
        g = min(max(y[0], 1e-16), 1.0)
        return (g * g / second_moment(g),)

    def hit_one(t, y):
        return y[0] - 1.0
    hit_one.terminal = True
    hit_one.direction = 1.0

    sol = solve_ivp(rhs, (t0, 1.25 * t_star_separable + 1.0), (g0,),
                    method="DOP853", rtol=max(tol, 1e-13), atol=tol * 1e-3,
                    dense_output=True, events=hit_one)
    if sol.status != 1 or not sol.t_events[0].size:
        raise NumericalError(
            f"ramp ODE for {profile.name} never reached height 1 "
            f"(status {sol.status})")
    t_star = float(sol.t_events[0][0])

    traj = RampTrajectory(np.empty(0), np.empty(0), t_star, t_star_separable,
                          c3, t0, g0, early, sol.sol)
    times = np.linspace(0.0, t_star, n_samples)
    values = np.array([traj.value_at(float(t)) for t in times])
    traj.times = times
    traj.values = values
    return traj


def variational_time(profile: DomainProfile, g: float) -> float:
    """Time at which the ramp reaches height g, from moments alone.

    Integrating the energy balance of the truncated-cone solution gives
    t(g) = r I1(g) - I2(g)/g, an algebraic identity in the first two
    perimeter moments that bypasses the ODE entirely.
    """
    if not (0.0 < g <= 1.0 + 1e-12):
        raise OutOfRange(f"relative height g={g} outside (0, 1]")
    g = min(float(g), 1.0)
    r = profile.inradius
    return r * profile.moment(1, r * g) - profile.moment(2, r * g) / g


def explicit_flow_value(profile: DomainProfile, ramp: RampTrajectory,
                        t: float, dist_value: float) -> float:
    """Value at time t of the flow started from the inradius plateau,
    at a point whose distance to the boundary is ``dist_value``.

    Before t_star the solution is the truncated cone min(d/g(t), r);
    afterwards it is the cone shrinking linearly, vanishing at
    t_star + (L2 norm of d)^2.
    """
    r = profile.inradius
    if not (0.0 <= dist_value <= r * (1 + 1e-12)):
        raise OutOfRange(f"distance value {dist_value} outside [0, {r}]")
    if t < 0.0:
        raise OutOfRange(f"time {t} is negative")
    if t == 0.0:
        return r if dist_value > 0.0 else 0.0
    if t < ramp.t_star:
        return min(dist_value / ramp.value_at(t), r)
    scale = max(profile.d_norm2_sq + ramp.t_star - t, 0.0) / profile.d_norm2_sq
    return scale * dist_value


@dataclass(frozen=True)
class LevelSet:
    """Superlevel set of the explicit flow, described by a distance
    threshold: {u(t) > c} = {d > threshold}.  When the requested level
    reaches the inradius the strict superlevel set is empty and the
    meaningful object is the plateau {d >= threshold}; ``plateau``
    flags that case."""
    threshold: float
    plateau: bool


def level_set_threshold(ramp: RampTrajectory, c: float, t: float,
                        inradius: float) -> LevelSet:
    """Distance threshold describing {u(t) > c} during the ramp phase."""
    if not (0.0 <= c <= inradius * (1 + 1e-12)):
        raise OutOfRange(f"level {c} outside [0, {inradius}]")
    if not (0.0 <= t <= ramp.t_star):
        raise OutOfRange(
            f"time {t} outside the ramp phase [0, {ramp.t_star}]")
    return LevelSet(threshold=c * ramp.value_at(t),
                    plateau=bool(c >= inradius * (1 - 1e-12)))


def extinction_time(profile: DomainProfile, ramp: RampTrajectory) -> float:
    """Time at which the plateau-started flow vanishes identically."""
    return ramp.t_star + profile.d_norm2_sq
