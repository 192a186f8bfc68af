"""Singularities of the Laplace transform ``s**(a*g-b) / (s**a - lam)**g``.

The branch point at the origin and the main-sheet poles are ordered by
``phi(s) = (Re s + |s|)/2``: a point ``s`` lies on the parabola
``mu*(iu+1)**2`` exactly when ``phi(s) == mu``. Consecutive parabolas through
the sorted singularities cut the plane into regions in which the contour can
be placed.
"""

import math
import numbers
from dataclasses import dataclass, field

from .errors import InvalidParameterError, UnsupportedParametersError
from .scalar_kernels import cpow_principal, principal_arg

__all__ = [
    "MLParams",
    "Singularity",
    "SingularityChart",
    "pole_index_set",
    "poles",
    "phi",
    "build_chart",
]

BRANCH_POINT = "branch_point"
POLE = "pole"

# relative tolerance under which two phi values are treated as one boundary
PHI_MERGE_RTOL = 1e-14


@dataclass(frozen=True)
class MLParams:
    """Parameters ``(alpha, beta, gamma)`` of ``E^gamma_{alpha,beta}``."""

    alpha: float
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not isinstance(v, numbers.Real) or not math.isfinite(v):
                raise InvalidParameterError(f"{name} must be a finite real, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.alpha <= 0.0:
            raise InvalidParameterError(f"alpha must be > 0, got {self.alpha!r}")
        if self.gamma <= 0.0:
            raise InvalidParameterError(f"gamma must be > 0, got {self.gamma!r}")

    @property
    def is_two_parameter(self):
        return self.gamma == 1.0

    def supported_at(self, theta):
        """Whether the contour method covers ``Arg lambda == theta``."""
        if self.gamma == 1.0:
            return True
        return 0.0 < self.alpha < 1.0 and abs(theta) > self.alpha * math.pi

    def check_supported(self, theta):
        if self.supported_at(theta):
            return
        if not 0.0 < self.alpha < 1.0:
            raise UnsupportedParametersError(
                f"gamma={self.gamma!r} != 1 requires 0 < alpha < 1, got alpha={self.alpha!r}"
            )
        raise UnsupportedParametersError(
            f"gamma={self.gamma!r} != 1 requires |Arg z| > alpha*pi; "
            f"got |Arg z|={abs(theta)!r} <= {self.alpha * math.pi!r}"
        )


@dataclass
class Singularity:
    """One chart entry; conjugate or on-cut poles sharing a phi are merged."""

    value: complex
    phi: float
    kind: str
    merged_poles: list = field(default_factory=list)


@dataclass
class SingularityChart:
    """Sorted singularity entries and per-region strength exponents.

    ``strengths[j] = (p_j, q_j)`` holds the algebraic blow-up exponents at the
    left and right boundary of region ``j``; the last region has ``q = None``.
    """

    params: MLParams
    lam: complex
    theta: float
    entries: list
    strengths: list

    @property
    def n_regions(self):
        return len(self.entries)

    @property
    def phis(self):
        return [e.phi for e in self.entries]

    def all_poles(self):
        return [p for e in self.entries for p in e.merged_poles]


def pole_index_set(alpha, theta):
    """Integers ``j`` with ``-alpha/2 - theta/(2pi) < j <= alpha/2 - theta/(2pi)``."""
    lo = -alpha / 2.0 - theta / (2.0 * math.pi)
    hi = alpha / 2.0 - theta / (2.0 * math.pi)
    j = math.floor(lo) + 1
    out = []
    while j <= hi:
        out.append(j)
        j += 1
    return out


def poles(alpha, lam):
    """Main-sheet solutions of ``s**alpha == lam``."""
    lam = complex(lam)
    if lam == 0:
        return []
    theta = principal_arg(lam)
    rho = abs(lam) ** (1.0 / alpha)
    out = []
    for j in pole_index_set(alpha, theta):
        ang = (theta + 2.0 * j * math.pi) / alpha
        out.append(complex(rho * math.cos(ang), rho * math.sin(ang)))
    return out


def phi(s):
    """``(Re s + |s|)/2``, evaluated without cancellation for ``Re s < 0``."""
    s = complex(s)
    r = abs(s)
    if s.real >= 0.0:
        return 0.5 * (s.real + r)
    if r == 0.0:
        return 0.0
    return 0.5 * s.imag * s.imag / (r - s.real)


def origin_strength(params, rtol=1e-14):
    """Blow-up exponent of the region next to the branch point."""
    excess = params.beta - params.alpha * params.gamma - 1.0
    if abs(excess) <= rtol * max(1.0, abs(params.beta)):
        # logarithmic case, majorised by a unit power
        return 1.0
    if excess < 0.0:
        return 0.0
    return 2.0 * excess


def build_chart(params, lam):
    """Group and sort the singularities of the transform for ``lam != 0``."""
    lam = complex(lam)
    if lam == 0:
        raise InvalidParameterError("lambda = 0 has no chart; use the closed form t**(beta-1)/Gamma(beta)")
    theta = principal_arg(lam)
    scale = abs(lam) ** (1.0 / params.alpha)
    tol = PHI_MERGE_RTOL * scale

    origin = Singularity(value=0j, phi=0.0, kind=BRANCH_POINT, merged_poles=[])
    groups = []
    for s in sorted(poles(params.alpha, lam), key=phi):
        f = phi(s)
        if f <= tol:
            origin.merged_poles.append(s)
            continue
        if groups and f - groups[-1].phi <= PHI_MERGE_RTOL * max(f, scale):
            groups[-1].merged_poles.append(s)
            continue
        groups.append(Singularity(value=s, phi=f, kind=POLE, merged_poles=[s]))

    entries = [origin] + groups
    g = params.gamma
    strengths = [(origin_strength(params), g if len(entries) > 1 else None)]
    for j in range(1, len(entries)):
        strengths.append((g, g if j + 1 < len(entries) else None))
    return SingularityChart(params=params, lam=lam, theta=theta, entries=entries, strengths=strengths)


def root_residual(alpha, s, lam):
    """``|s**alpha - lam| / |lam|``; used to verify pole locations."""
    return abs(cpow_principal(s, alpha) - lam) / abs(lam)
