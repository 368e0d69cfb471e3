"""Exact piecewise-linear functions and closed sets on an interval.

The one-dimensional results in this package are algebraic facts about
slopes, areas, and L2 pairings of piecewise-linear functions, so they
are checked in exact rational arithmetic rather than floating point.
:class:`PiecewiseLinearFn` stores breakpoints and values as
``fractions.Fraction`` and evaluates inner products segment by segment
in closed form; :class:`ClosedSetApprox` is a finite union of disjoint
closed intervals (singletons allowed), enough to represent fat Cantor
sets to any construction depth.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from ..errors import InputError, OutOfRange

__all__ = ["ClosedSetApprox", "PiecewiseLinearFn"]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        # Binary floats convert exactly; no decimal guessing.
        return Fraction(x)
    raise InputError(f"expected a rational number, got {type(x).__name__}")


class PiecewiseLinearFn:
    """Continuous piecewise-linear function on [breakpoints[0], breakpoints[-1]].

    Immutable; all coordinates are exact rationals.  Equality is
    semantic: two functions are equal when they agree as functions,
    regardless of how their breakpoints are laid out.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Sequence, values: Sequence):
        bps = tuple(_as_fraction(b) for b in breakpoints)
        vals = tuple(_as_fraction(v) for v in values)
        if len(bps) != len(vals):
            raise InputError(
                f"{len(bps)} breakpoints but {len(vals)} values")
        if len(bps) < 2:
            raise InputError("need at least two breakpoints")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise InputError("breakpoints must increase strictly")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseLinearFn is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            (v1 - v0) / (b1 - b0)
            for b0, b1, v0, v1 in zip(self.breakpoints, self.breakpoints[1:],
                                      self.values, self.values[1:]))

    @property
    def lipschitz(self) -> Fraction:
        return max(abs(s) for s in self.slopes)

    @property
    def boundary_zero(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == 0

    def value_at(self, x) -> Fraction:
        x = _as_fraction(x)
        a, b = self.domain
        if not a <= x <= b:
            raise OutOfRange(f"{x} outside the domain [{a}, {b}]")
        # rightmost breakpoint <= x
        lo, hi = 0, len(self.breakpoints) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] <= x:
                lo = mid
            else:
                hi = mid - 1
        if lo == len(self.breakpoints) - 1:
            return self.values[-1]
        b0, b1 = self.breakpoints[lo], self.breakpoints[lo + 1]
        v0, v1 = self.values[lo], self.values[lo + 1]
        return v0 + (v1 - v0) * (x - b0) / (b1 - b0)

    # -- exact integrals -----------------------------------------------

    def _refined_with(self, other: "PiecewiseLinearFn"):
        if self.domain != other.domain:
            raise InputError(
                f"domain mismatch: {self.domain} vs {other.domain}")
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        return bps, [self.value_at(x) for x in bps], \
            [other.value_at(x) for x in bps]

    def l2_inner(self, other: "PiecewiseLinearFn") -> Fraction:
        """Exact integral of self * other over the common domain."""
        bps, fv, gv = self._refined_with(other)
        total = Fraction(0)
        for i in range(len(bps) - 1):
            h = bps[i + 1] - bps[i]
            f0, g0 = fv[i], gv[i]
            sf = (fv[i + 1] - f0) / h
            sg = (gv[i + 1] - g0) / h
            total += f0 * g0 * h + (f0 * sg + g0 * sf) * h * h / 2 \
                + sf * sg * h * h * h / 3
        return total

    def l2_norm_sq(self) -> Fraction:
        return self.l2_inner(self)

    def integral(self) -> Fraction:
        """Exact integral of self over its domain."""
        total = Fraction(0)
        for b0, b1, v0, v1 in zip(self.breakpoints, self.breakpoints[1:],
                                  self.values, self.values[1:]):
            total += (v0 + v1) * (b1 - b0) / 2
        return total

    def cumulative_at(self, x) -> Fraction:
        """Exact integral of self from the left endpoint to x."""
        x = _as_fraction(x)
        a, b = self.domain
        if not a <= x <= b:
            raise OutOfRange(f"{x} outside the domain [{a}, {b}]")
        total = Fraction(0)
        for b0, b1, v0, v1 in zip(self.breakpoints, self.breakpoints[1:],
                                  self.values, self.values[1:]):
            if x <= b0:
                break
            hi = min(x, b1)
            vhi = v0 + (v1 - v0) * (hi - b0) / (b1 - b0)
            total += (v0 + vhi) * (hi - b0) / 2
        return total

    # -- algebra ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PiecewiseLinearFn):
            return NotImplemented
        bps, fv, gv = self._refined_with(other)
        return PiecewiseLinearFn(bps, [a + b for a, b in zip(fv, gv)])

    def __sub__(self, other):
        if not isinstance(other, PiecewiseLinearFn):
            return NotImplemented
        bps, fv, gv = self._refined_with(other)
        return PiecewiseLinearFn(bps, [a - b for a, b in zip(fv, gv)])

    def __mul__(self, scalar):
        c = _as_fraction(scalar)
        return PiecewiseLinearFn(self.breakpoints,
                                 [c * v for v in self.values])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLinearFn):
            return NotImplemented
        if self.domain != other.domain:
            return False
        bps, fv, gv = self._refined_with(other)
        return fv == gv

    def __hash__(self):
        a, b = self.domain
        return hash((a, b, self.values[0], self.values[-1]))

    def __repr__(self):
        n = len(self.breakpoints)
        a, b = self.domain
        return f"PiecewiseLinearFn({n} breakpoints on [{a}, {b}])"


class ClosedSetApprox:
    """Finite union of disjoint closed intervals, in ascending order.

    Singletons are written as intervals with equal endpoints.  Adjacent
    intervals must be separated by a genuine gap; touching intervals
    should be merged by the caller.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable):
        ivs = tuple((_as_fraction(a), _as_fraction(b)) for a, b in intervals)
        if not ivs:
            raise InputError("need at least one interval")
        for a, b in ivs:
            if a > b:
                raise InputError(f"interval [{a}, {b}] is reversed")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if not b0 < a1:
                raise InputError(
                    "intervals must be disjoint and ascending; merge "
                    "touching pieces first")
        object.__setattr__(self, "intervals", ivs)

    def __setattr__(self, name, value):
        raise AttributeError("ClosedSetApprox is immutable")

    @property
    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.intervals[0][0], self.intervals[-1][1]

    def contains(self, x) -> bool:
        x = _as_fraction(x)
        return any(a <= x <= b for a, b in self.intervals)

    def __eq__(self, other):
        if not isinstance(other, ClosedSetApprox):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return f"ClosedSetApprox({len(self.intervals)} intervals, " \
               f"measure {self.measure})"
