"""Inverse Laplace transform of ``s**(a*g-b) / (s**a - lam)**g`` at ``t``.

``e(t; lam) = t**(b-1) E^g_{a,b}(t**a lam)`` is recovered as the residues of
the poles right of the selected parabola plus the trapezoidal approximation
of the contour integral.
"""

import cmath
import math
from dataclasses import dataclass

from . import _kernels
from .contour_solver import ContourPlan, Tolerances, plan_all, plan_region
from .errors import InvalidParameterError, NoAdmissibleRegionError
from .scalar_kernels import cpow_principal, csum, principal_arg, rgamma_real
from .singularity_map import build_chart

__all__ = ["EvalResult", "integrand", "trapezoid", "residues", "ml_lt"]


@dataclass
class EvalResult:
    value: complex
    plan: ContourPlan
    residue_sum: complex
    quadrature_sum: complex
    n_integrand_evals: int
    scaled_tau: float
    chart: object = None
    plans: list = None


def integrand(u, mu, params, t, lam):
    """``g(u) = exp(z t) z**(a g - b) z'(u) / (z**a - lam)**g``, ``z = mu (iu+1)**2``."""
    z = mu * (1j * u + 1.0) ** 2
    dz = 2j * mu * (1j * u + 1.0)
    a, b, g = params.alpha, params.beta, params.gamma
    num = cmath.exp(z * t) * cpow_principal(z, a * g - b) * dz
    den = cpow_principal(z, a) - lam
    if g != 1.0:
        den = cpow_principal(den, g)
    return num / den


def trapezoid(plan, params, t, lam):
    """``h/(2 pi i) * sum_{k=-N..N} g(k h)``; folded in half for real ``lam``."""
    if not plan.admissible:
        raise ValueError(f"plan for region {plan.region_index} is not admissible ({plan.rejection})")
    lam = complex(lam)
    fold = lam.imag == 0.0
    a, b, g = params.alpha, params.beta, params.gamma
    sr, si = _kernels.trapezoid_sum(plan.mu, plan.h, plan.N, t, lam.real, lam.imag, a, a * g - b, g, fold)
    scale = plan.h / (2.0 * math.pi)
    if fold:
        return complex(scale * si, 0.0)
    # (sr + i si) / i = si - i sr
    return complex(scale * si, -scale * sr)


def residues(params, chart, indices, t):
    """Sum of ``(1/a) s**(1-b) exp(s t)`` over every pole in the chart entries ``indices``."""
    indices = list(indices)
    if not indices:
        return 0j
    if params.gamma != 1.0:
        raise AssertionError("residue subtraction is only defined for gamma == 1")
    terms = []
    for j in indices:
        for s in chart.entries[j].merged_poles:
            # exp(s t) s**(1-b) / a as a single exponential so overflow saturates cleanly
            logs = complex(math.log(abs(s)), principal_arg(s))
            terms.append(_exp_overflow_safe(s * t + (1.0 - params.beta) * logs - math.log(params.alpha)))
    return csum(terms)


def _exp_overflow_safe(w):
    """``exp(w)``, saturating to an infinite modulus instead of raising."""
    try:
        return cmath.exp(w)
    except OverflowError:
        c, s = math.cos(w.imag), math.sin(w.imag)
        return complex(math.copysign(math.inf, c) if c else 0.0, math.copysign(math.inf, s) if s else 0.0)


def ml_lt(params, t, lam, tol=Tolerances(), force_region=None):
    """Evaluate ``t**(b-1) E^g_{a,b}(t**a lam)``.

    The argument is rescaled to ``t = 1`` first (``lam -> t**a lam``), which
    bounds the round-off growth ``exp(mu t)`` uniformly. ``force_region``
    bypasses the region choice; it raises :class:`NoAdmissibleRegionError`
    when that region is rejected.
    """
    t = float(t)
    if not t > 0.0 or not math.isfinite(t):
        raise InvalidParameterError(f"t must be positive and finite, got {t!r}")
    lam = complex(lam)
    if lam == 0:
        v = t ** (params.beta - 1.0) * rgamma_real(params.beta)
        return EvalResult(
            value=complex(v, 0.0), plan=None, residue_sum=0j, quadrature_sum=complex(v, 0.0),
            n_integrand_evals=0, scaled_tau=t,
        )
    params.check_supported(principal_arg(lam))

    tau = t
    lam1 = lam if tau == 1.0 else lam * tau**params.alpha
    if lam.imag == 0.0:
        lam1 = complex(lam1.real, 0.0)
    chart = build_chart(params, lam1)
    if force_region is None:
        plans, sel = plan_all(chart, 1.0, tol)
        plan = plans[sel]
    else:
        if not 0 <= force_region < chart.n_regions:
            raise NoAdmissibleRegionError(
                f"region {force_region} does not exist (chart has {chart.n_regions} regions)"
            )
        plan = plan_region(chart, force_region, 1.0, tol)
        plan.residue_indices = list(range(force_region + 1, chart.n_regions))
        plans = None
        if not plan.admissible:
            raise NoAdmissibleRegionError(
                f"forced region {force_region} rejected: {plan.rejection}",
                [(force_region, plan.rejection)],
            )

    quad = trapezoid(plan, params, 1.0, lam1)
    res = residues(params, chart, plan.residue_indices, 1.0)
    value = res + quad
    if tau != 1.0:
        value = value * tau ** (params.beta - 1.0)
        res = res * tau ** (params.beta - 1.0)
        quad = quad * tau ** (params.beta - 1.0)
    if lam.imag == 0.0:
        value = complex(value.real, 0.0)
    fold = lam1.imag == 0.0
    return EvalResult(
        value=value,
        plan=plan,
        residue_sum=res,
        quadrature_sum=quad,
        n_integrand_evals=plan.N + 1 if fold else 2 * plan.N + 1,
        scaled_tau=tau,
        chart=chart,
        plans=plans,
    )
