"""Distance functions as extremals of the maximal weighted gradient.

The package has two halves.  ``maxgrad.graphs`` works on finite weighted
graphs: discrete gradient and divergence, distance functions to a
constraint set, eigenvalue certificates for the Lipschitz energy,
proximal steps, and the implicit descent flow with its extinction
profile.  ``maxgrad.continuum`` covers model domains: perimeter profiles
of inner neighborhoods, the scalar ODE driving the explicit flow
solution, radial calibrations on balls, and exact rational arithmetic
for piecewise linear profiles on an interval, including extreme-point
and eigenfunction checks.
"""

from . import continuum, graphs
from .errors import (
    BoundaryIsEverything,
    BoundaryViolation,
    ConflictingEdgeWeights,
    DegenerateProfile,
    DisconnectedGraph,
    EmptyBoundary,
    EmptyTrajectory,
    InputError,
    InvalidIndex,
    InvalidP,
    MaxgradError,
    MissingBoundParams,
    NonconvergedAfterMaxIters,
    NonpositiveWeight,
    NonUnitWeights,
    NotInUnitBall,
    NumericalError,
    OutOfRange,
    SelfLoop,
    ZeroFunction,
)

__version__ = "0.1.0"
