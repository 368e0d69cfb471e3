"""Continuum side: model domains, ramp ODE, calibrations, exact 1D tools."""

from .geometry import (
    LevelSet,
    PerimeterBoundReport,
    RampTrajectory,
    check_perimeter_lower_bound,
    explicit_flow_value,
    extinction_time,
    level_set_threshold,
    perimeter_moment,
    perimeter_moment_lower_bound,
    solve_ramp_ode,
    variational_time,
)
from .oned import (
    EigenCheck1D,
    ExtremeCheck1D,
    basis_function,
    distance_to_set,
    eigen_check_1d,
    extreme_check_1d,
    inner_product,
    rayleigh_quotient,
    rayleigh_quotient_sq,
    svc_set,
)
from .piecewise import ClosedSetApprox, PiecewiseLinearFn
from .profiles import (
    DomainProfile,
    disk_profile,
    interval_profile,
    lshape_profile,
    profile_from_csv,
    square_profile,
    tabulated_profile,
)
from .sphere import SphereCalibration, calibration_profile, sphere_calibration

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
    "EigenCheck1D",
    "ExtremeCheck1D",
    "basis_function",
    "distance_to_set",
    "eigen_check_1d",
    "extreme_check_1d",
    "inner_product",
    "rayleigh_quotient",
    "rayleigh_quotient_sq",
    "svc_set",
    "ClosedSetApprox",
    "PiecewiseLinearFn",
    "DomainProfile",
    "disk_profile",
    "interval_profile",
    "lshape_profile",
    "profile_from_csv",
    "square_profile",
    "tabulated_profile",
    "SphereCalibration",
    "calibration_profile",
    "sphere_calibration",
]
