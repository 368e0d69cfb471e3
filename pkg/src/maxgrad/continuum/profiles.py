"""Perimeter profiles of inner neighborhoods of model domains.

A :class:`DomainProfile` packages what the continuum machinery needs to
know about a bounded domain: its dimension, its inradius r, and the
perimeter P(tau) of the superlevel sets {distance to the complement >=
tau} for tau in [0, r].  Built-in factories cover an interval, a disk, a
square, and an L-shaped set; arbitrary domains enter through tabulated
(tau, perimeter) samples joined by monotone cubic interpolation.

Profiles optionally carry the two radii used by the perimeter lower
bound: ``bound_inradius`` (the radius r-tilde normalizing the decay) and
``bound_range`` (the distance up to which the bound is claimed).
"""

from __future__ import annotations

import csv
import math
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator, PPoly

from ..errors import DegenerateProfile, InputError, OutOfRange

__all__ = [
    "DomainProfile",
    "interval_profile",
    "disk_profile",
    "square_profile",
    "lshape_profile",
    "tabulated_profile",
    "profile_from_csv",
]

_QUAD_TOL = 1e-12


class DomainProfile:
    """Dimension, inradius, and inner-neighborhood perimeter of a domain."""

    def __init__(
        self,
        name: str,
        dim: int,
        inradius: float,
        perimeter_fn: Callable[[float], float],
        *,
        moment_fn: Callable[[int, float], float] | None = None,
        bound_inradius: float | None = None,
        bound_range: float | None = None,
        d_norm2_sq: float | None = None,
        quad_points: Sequence[float] | None = None,
    ):
        if dim < 1:
            raise DegenerateProfile(f"dimension must be at least 1, got {dim}")
        if not (inradius > 0 and math.isfinite(inradius)):
            raise DegenerateProfile(f"inradius must be positive, got {inradius}")
        self.name = name
        self.dim = int(dim)
        self.inradius = float(inradius)
        self._perimeter_fn = perimeter_fn
        self._moment_fn = moment_fn
        self.bound_inradius = bound_inradius
        self.bound_range = bound_range
        self._d_norm2_sq = d_norm2_sq
        self._quad_points = quad_points
        if not (perimeter_fn(0.0) > 0):
            raise DegenerateProfile("perimeter at distance 0 must be positive")

    def perimeter(self, tau: float) -> float:
        """P(tau) for tau in [0, inradius]."""
        if not (0.0 <= tau <= self.inradius * (1 + 1e-12)):
            raise OutOfRange(
                f"tau={tau} outside [0, {self.inradius}] for profile {self.name}")
        return float(self._perimeter_fn(min(tau, self.inradius)))

    def moment(self, k: int, upper: float) -> float:
        """Integral of P(t) t^k for t from 0 to upper (absolute units)."""
        if upper == 0.0:
            return 0.0
        if self._moment_fn is not None:
            return float(self._moment_fn(k, upper))
        pts = None
        limit = 200
        if self._quad_points is not None:
            pts = [p for p in self._quad_points if 0.0 < p < upper]
            # quadpack refuses more break points than subdivisions, and
            # tabulated profiles can carry hundreds of them
            limit = max(limit, 2 * len(pts) + 10)
        val, _ = quad(lambda t: self._perimeter_fn(t) * t ** k, 0.0, upper,
                      epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=limit,
                      points=pts)
        return float(val)

    @property
    def d_norm2_sq(self) -> float:
        """Squared L2 norm of the distance function over the domain.

        By the layer-cake identity this equals the second moment of the
        perimeter profile up to the inradius, which is used whenever no
        exact value was supplied at construction.
        """
        if self._d_norm2_sq is None:
            self._d_norm2_sq = self.moment(2, self.inradius)
        return self._d_norm2_sq

    def __repr__(self) -> str:
        return (f"DomainProfile({self.name!r}, dim={self.dim}, "
                f"inradius={self.inradius})")


def interval_profile(a: float = -1.0, b: float = 1.0) -> DomainProfile:
    """Interval (a, b): constant perimeter 2, inradius half the length."""
    if not b > a:
        raise InputError(f"empty interval ({a}, {b})")
    r = 0.5 * (b - a)

    def moment(k: int, upper: float) -> float:
        return 2.0 * upper ** (k + 1) / (k + 1)

    return DomainProfile(
        "interval", 1, r, lambda tau: 2.0, moment_fn=moment,
        bound_inradius=r, bound_range=r, d_norm2_sq=2.0 * r ** 3 / 3.0)


def disk_profile(radius: float = 1.0) -> DomainProfile:
    """Disk of the given radius: perimeter decays linearly to zero."""
    if not radius > 0:
        raise InputError(f"radius must be positive, got {radius}")

    def moment(k: int, upper: float) -> float:
        return 2.0 * math.pi * (radius * upper ** (k + 1) / (k + 1)
                                - upper ** (k + 2) / (k + 2))

    return DomainProfile(
        "disk", 2, radius, lambda tau: 2.0 * math.pi * (radius - tau),
        moment_fn=moment, bound_inradius=radius, bound_range=radius,
        d_norm2_sq=math.pi * radius ** 4 / 6.0)


def square_profile(side: float = 2.0) -> DomainProfile:
    """Axis-aligned square of the given side length."""
    if not side > 0:
        raise InputError(f"side must be positive, got {side}")
    r = 0.5 * side

    def moment(k: int, upper: float) -> float:
        return (4.0 * side * upper ** (k + 1) / (k + 1)
                - 8.0 * upper ** (k + 2) / (k + 2))

    return DomainProfile(
        "square", 2, r, lambda tau: 4.0 * side - 8.0 * tau,
        moment_fn=moment, bound_inradius=r, bound_range=r)


def lshape_profile(arm: float = 1.0, thickness: float = 0.4) -> DomainProfile:
    """L-shaped set: an arm x arm square minus the congruent corner square
    of side arm - thickness, leaving two strips of the given thickness.

    The inner-neighborhood perimeter is exactly linear,
    P(tau) = 4 arm - tau (20 - pi) / 2, valid while tau is below both half
    the thickness and the removed side; requiring thickness <= 2 arm / 3
    makes half the thickness the binding radius, so the formula covers the
    whole range [0, inradius].  The pi term comes from the quarter-circle
    arc the inner neighborhoods develop at the reflex corner.
    """
    if not (0 < thickness < arm):
        raise InputError("need 0 < thickness < arm")
    if thickness > 2.0 * arm / 3.0:
        raise InputError(
            "thickness must be at most 2/3 of the arm so the exact perimeter "
            "formula covers distances up to the inradius")
    r = 0.5 * thickness
    r_tilde = 8.0 * arm / (20.0 - math.pi)

    def perimeter(tau: float) -> float:
        return 4.0 * arm * (1.0 - tau / r_tilde)

    def moment(k: int, upper: float) -> float:
        return 4.0 * arm * (upper ** (k + 1) / (k + 1)
                            - upper ** (k + 2) / ((k + 2) * r_tilde))

    return DomainProfile(
        "lshape", 2, r, perimeter, moment_fn=moment,
        bound_inradius=r_tilde, bound_range=r)


def _spline_moment_fn(interp: PchipInterpolator) -> Callable[[int, float], float]:
    """Exact moments of a piecewise-cubic perimeter profile.

    P(t) t^k is itself piecewise polynomial, so rather than sending the
    interpolant through adaptive quadrature -- slow and capped in the
    number of break points it accepts -- expand t^k around each
    breakpoint, multiply coefficient arrays, and antidifferentiate once
    per exponent.
    """
    x = interp.x
    coeffs = interp.c
    deg = coeffs.shape[0] - 1
    cache: dict[int, PPoly] = {}

    def moment(k: int, upper: float) -> float:
        anti = cache.get(k)
        if anti is None:
            left = x[:-1]
            prod = np.zeros((deg + k + 1, coeffs.shape[1]))
            for j in range(k + 1):
                scale = math.comb(k, j) * left ** (k - j)
                for p in range(deg + 1):
                    prod[deg + k - (p + j)] += coeffs[deg - p] * scale
            anti = PPoly(prod, x).antiderivative()
            cache[k] = anti
        return float(anti(min(max(upper, x[0]), x[-1])))

    return moment


def tabulated_profile(taus: Sequence[float], perimeters: Sequence[float],
                      dim: int, *, name: str = "tabulated",
                      bound_inradius: float | None = None,
                      bound_range: float | None = None,
                      d_norm2_sq: float | None = None) -> DomainProfile:
    """Profile from sampled (tau, perimeter) pairs, monotone-cubic joined.

    ``taus`` must be strictly increasing and start at 0; the last sample
    defines the inradius.  Perimeter values must be positive except
    possibly at the inradius itself.
    """
    t = np.asarray(taus, dtype=float)
    p = np.asarray(perimeters, dtype=float)
    if t.ndim != 1 or t.shape != p.shape or len(t) < 2:
        raise InputError("need matching 1-d tau and perimeter arrays, length >= 2")
    if t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise InputError("tau samples must start at 0 and increase strictly")
    if np.any(p[:-1] <= 0) or p[-1] < 0:
        raise DegenerateProfile("perimeter samples must be positive before the inradius")
    interp = PchipInterpolator(t, p, extrapolate=False)
    r = float(t[-1])

    def perimeter(tau: float) -> float:
        return float(interp(min(max(tau, 0.0), r)))

    if bound_range is not None:
        bound_range = min(bound_range, r)
    return DomainProfile(
        name, dim, r, perimeter, moment_fn=_spline_moment_fn(interp),
        bound_inradius=bound_inradius, bound_range=bound_range,
        d_norm2_sq=d_norm2_sq, quad_points=t.tolist())


def profile_from_csv(path: str, dim: int, **kwargs) -> DomainProfile:
    """Read tau, perimeter columns from a headed CSV file."""
    taus: list[float] = []
    perims: list[float] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2:
            raise InputError(f"{path}: expected a header row with two columns")
        for row in reader:
            if not row or not row[0].strip():
                continue
            try:
                taus.append(float(row[0]))
                perims.append(float(row[1]))
            except ValueError as exc:
                raise InputError(f"{path}: bad numeric row {row!r}") from exc
    kwargs.setdefault("name", path)
    return tabulated_profile(taus, perims, dim, **kwargs)
