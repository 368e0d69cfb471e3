"""Exception types shared across the package.

Input and construction problems derive from :class:`InputError`, numerical
failures from :class:`NumericalError`.  The CLI maps the former to exit
code 2 and the latter to exit code 3.
"""

from __future__ import annotations

__all__ = [
    "MaxgradError",
    "InputError",
    "NumericalError",
    "DisconnectedGraph",
    "NonpositiveWeight",
    "SelfLoop",
    "EmptyBoundary",
    "BoundaryIsEverything",
    "ConflictingEdgeWeights",
    "InvalidP",
    "NonUnitWeights",
    "ZeroFunction",
    "NotInUnitBall",
    "BoundaryViolation",
    "NonconvergedAfterMaxIters",
    "EmptyTrajectory",
    "OutOfRange",
    "MissingBoundParams",
    "DegenerateProfile",
    "InvalidIndex",
]


class MaxgradError(Exception):
    """Base class for all package errors."""


class InputError(MaxgradError):
    """Malformed input: bad graph data, bad parameters, bad files."""


class NumericalError(MaxgradError):
    """A solver or integrator failed to reach the requested accuracy."""


# graph construction

class DisconnectedGraph(InputError):
    """The edge set does not connect all vertices."""


class NonpositiveWeight(InputError):
    """An edge weight is zero or negative."""


class SelfLoop(InputError):
    """An edge connects a vertex to itself."""


class EmptyBoundary(InputError):
    """The constraint set is empty; the variational problem is degenerate."""


class BoundaryIsEverything(InputError):
    """Every vertex is constrained; only the zero function remains."""


class ConflictingEdgeWeights(InputError):
    """The same vertex pair appears twice with different weights."""


# function-space preconditions

class InvalidP(InputError):
    """Norm exponent outside [1, inf]."""


class NonUnitWeights(InputError):
    """Operation requires all edge weights equal to one."""


class ZeroFunction(InputError):
    """The identically-zero function was passed where it is meaningless."""


class NotInUnitBall(InputError):
    """Function has Lipschitz energy above one (plus tolerance)."""


class BoundaryViolation(InputError):
    """Function does not vanish on the constraint set."""


class OutOfRange(InputError):
    """Scalar argument outside its documented domain."""


class MissingBoundParams(InputError):
    """Profile lacks the radii needed for the perimeter lower bound."""


class DegenerateProfile(InputError):
    """Perimeter data is incompatible with a nondegenerate domain."""


class InvalidIndex(InputError):
    """Basis index must be a positive integer."""


# numerical failures

class NonconvergedAfterMaxIters(NumericalError):
    """Iterative solver hit its iteration cap before reaching tolerance."""

    def __init__(self, message: str, gap: float):
        super().__init__(message)
        self.gap = gap


class EmptyTrajectory(NumericalError):
    """Trajectory contains no usable pre-extinction state."""
