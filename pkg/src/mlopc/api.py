"""Public entry points: ``mittag_leffler``, ``ml``, ``mixed_error`` and ``reference_value``."""

import math

import numpy as np

from .contour_solver import Tolerances
from .errors import InvalidParameterError
from .lt_inversion import ml_lt
from .scalar_kernels import rgamma_real
from .series_oracle import OracleConfig, ml_closed_form_mp, ml_series_mp
from .singularity_map import MLParams

__all__ = ["mittag_leffler", "evaluate", "ml", "mixed_error", "reference_value", "tolerances_for"]

TOL_MIN = 1e-15
TOL_MAX = 1e-1


def tolerances_for(tol):
    tol = float(tol)
    if not TOL_MIN <= tol <= TOL_MAX:
        raise InvalidParameterError(f"tol must lie in [{TOL_MIN}, {TOL_MAX}], got {tol!r}")
    return Tolerances(eps=tol)


def evaluate(alpha, beta, gamma, z, tol=1e-15, force_region=None):
    """Full :class:`~mlopc.lt_inversion.EvalResult` for ``E^gamma_{alpha,beta}(z)``."""
    params = MLParams(alpha, beta, gamma)
    return ml_lt(params, 1.0, complex(z), tolerances_for(tol), force_region=force_region)


def mittag_leffler(alpha, beta, gamma, z, tol=1e-15, force_region=None):
    """``E^gamma_{alpha,beta}(z)`` for a single complex ``z``.

    >>> mittag_leffler(1, 1, 1, 1.0)
    (2.718281828459045+0j)
    """
    params = MLParams(alpha, beta, gamma)
    tols = tolerances_for(tol)
    z = complex(z)
    if z == 0:
        return complex(rgamma_real(params.beta), 0.0)
    return ml_lt(params, 1.0, z, tols, force_region=force_region).value


def ml(z, alpha, beta=1.0, gamma=1.0, tol=1e-15):
    """Vectorised convenience wrapper; returns a complex array shaped like ``z``."""
    zs = np.asarray(z, dtype=np.complex128)
    out = np.empty(zs.shape, dtype=np.complex128)
    for idx, v in np.ndenumerate(zs):
        out[idx] = mittag_leffler(alpha, beta, gamma, complex(v), tol)
    if out.ndim == 0:
        return complex(out)
    return out


def mixed_error(approx, reference):
    """``|reference - approx| / (1 + |reference|)``."""
    reference = complex(reference)
    return abs(reference - complex(approx)) / (1.0 + abs(reference))


def reference_value(alpha, beta, gamma, z, digits=100, max_terms=100_000):
    """High-precision value: elementary closed form when one applies, else the power series."""
    params = MLParams(alpha, beta, gamma)
    cfg = OracleConfig(working_digits=digits, max_terms=max_terms)
    v = ml_closed_form_mp(params, z, cfg)
    if v is None:
        v = ml_series_mp(params, z, cfg)
    re, im = float(v.real), float(v.imag)
    if not (math.isfinite(re) and math.isfinite(im)):
        raise OverflowError("reference value is outside the double range")
    return complex(re, im)
