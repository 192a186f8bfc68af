"""Mittag-Leffler functions by Laplace-transform inversion on optimal parabolic contours."""

from ._backend import BACKEND
from .api import evaluate, mittag_leffler, mixed_error, ml, reference_value
from .contour_solver import ContourPlan, Tolerances
from .errors import (
    InvalidParameterError,
    MLError,
    NoAdmissibleRegionError,
    OracleNonConvergenceError,
    UnsupportedParametersError,
)
from .singularity_map import MLParams

__all__ = [
    "BACKEND",
    "ContourPlan",
    "InvalidParameterError",
    "MLError",
    "MLParams",
    "NoAdmissibleRegionError",
    "OracleNonConvergenceError",
    "Tolerances",
    "UnsupportedParametersError",
    "evaluate",
    "mittag_leffler",
    "mixed_error",
    "ml",
    "reference_value",
]
