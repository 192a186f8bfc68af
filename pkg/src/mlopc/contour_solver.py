"""Quadrature parameters ``(mu, h, N)`` for every region of a chart.

For the parabola ``z(u) = mu*(iu+1)**2`` the trapezoidal rule with step ``h``
and ``2N+1`` nodes has three error sources: discretisation on either side of
the strip of analyticity, truncation of the infinite sum, and round-off
``~exp(mu*t)*eps_mach``. Each solver equates the exponential parts of these
terms with the target ``log(eps)`` and solves in closed form.

Regions bounded on the right shrink their strip to ``[phibar_left,
phibar_right]`` so that the algebraic blow-up factors ``(c*-cbar*)**-p`` and
``(d*-dbar*)**-q`` both equal a safety factor ``fbar``; the target accuracy
becomes ``eps/fbar``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IterationDivergenceError, NoAdmissibleRegionError

__all__ = [
    "Tolerances",
    "BoundedRegionGeometry",
    "ContourPlan",
    "solve_bounded",
    "solve_unbounded",
    "plan_all",
    "balancing_residuals",
    "NARROW_REGION",
    "ROUNDOFF_DOMINATED",
    "FBAR_TOO_LARGE",
    "DIVERGED",
]

NARROW_REGION = "narrow_region"
ROUNDOFF_DOMINATED = "roundoff_dominated"
FBAR_TOO_LARGE = "fbar_too_large"
DIVERGED = "diverged"

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
ROUNDOFF = "roundoff"

# fixed-point passes for the (w, phibar_right) coupling in bounded regions
MAX_W_PASSES = 50
MAX_FBAR_ITERATIONS = 10
# passes pulling the right edge in until the round-off bound holds
MAX_EDGE_PASSES = 50


@dataclass(frozen=True)
class Tolerances:
    """Target accuracy and the admissible range of the safety factor ``fbar``.

    ``fbar_tar=None`` picks the geometric mean of the admissible interval
    region by region.
    """

    eps: float = 1e-15
    mach: float = float(np.finfo(np.float64).eps)
    fbar_min_floor: float = 1.0
    fbar_max: float = 10.0
    fbar_tar: float = None

    def __post_init__(self):
        if not self.mach < self.eps < 1.0:
            raise ValueError(f"need mach < eps < 1, got mach={self.mach!r}, eps={self.eps!r}")
        if not 1.0 <= self.fbar_min_floor <= self.fbar_max:
            raise ValueError("need 1 <= fbar_min_floor <= fbar_max")
        if self.fbar_tar is not None and not 1.0 <= self.fbar_tar <= self.fbar_max:
            raise ValueError("need 1 <= fbar_tar <= fbar_max")

    @property
    def log_eps(self):
        return math.log(self.eps)

    @property
    def log_mach(self):
        return math.log(self.mach)

    @property
    def roundoff_budget(self):
        """``log(eps) - log(mach)``; ``mu*t`` must stay below it."""
        return self.log_eps - self.log_mach


@dataclass
class BoundedRegionGeometry:
    phi_left: float
    phi_right: float
    phibar_left: float
    phibar_right: float
    cstar: float
    dstar: float
    cbar: float
    dbar: float
    w: float
    fbar: float
    fbar_min: float
    eps_bar: float


@dataclass
class ContourPlan:
    """Quadrature recipe for one region; rejected plans carry ``mu = h = nan``."""

    region_index: int
    mu: float = math.nan
    h: float = math.nan
    N: int = 0
    geometry: BoundedRegionGeometry = None
    admissible: bool = False
    rejection: str = None
    residue_indices: list = field(default_factory=list)
    branch: str = None
    n_exact: float = math.nan
    iterations: int = 0

    @property
    def n_nodes(self):
        return 2 * self.N + 1


def _reject(j, reason, geometry=None):
    return ContourPlan(region_index=j, admissible=False, rejection=reason, geometry=geometry)


def _default_target(tol, fbar_min):
    if tol.fbar_tar is not None:
        return tol.fbar_tar
    lo = max(fbar_min, tol.fbar_min_floor)
    tar = math.sqrt(lo * tol.fbar_max)
    return min(max(tar, 1.05 * fbar_min), tol.fbar_max)


def _bounded_fbar_min(a, b, p, q):
    if p == 0.0:
        return (a / (b - a)) ** q
    return ((a + b) / (b - a)) ** max(p, q)


def _solve_sqrt_phibar(a, b, fp, fq, w):
    """Solve the 2x2 system giving ``sqrt(phibar_left), sqrt(phibar_right)``."""
    den = 2.0 + w - (1.0 + w) * fp + fq
    left = ((2.0 + w + fq) * a + fp * b) / den
    right = (-(1.0 + w) * fq * a + (2.0 + w - (1.0 + w) * fp) * b) / den
    return left, right


def _solve_edges(a, b, p, q, t, tol):
    """``(abar, bbar, passes, fbar, fbar_min, eps_bar)`` for the strip ``[a**2, b**2]``,
    or a rejection reason."""
    fbar_min = _bounded_fbar_min(a, b, p, q)
    if fbar_min > tol.fbar_max:
        return FBAR_TOO_LARGE
    target = _default_target(tol, fbar_min)
    fbar = min(max(target, fbar_min * (1.0 + 1e-6), tol.fbar_min_floor), tol.fbar_max)
    if fbar <= fbar_min:
        return FBAR_TOO_LARGE

    eps_bar = tol.eps / fbar
    log_eb = math.log(eps_bar)
    fp = fbar ** (-1.0 / p) if p > 0.0 else 0.0
    fq = fbar ** (-1.0 / q)

    w = -b * b * t / log_eb
    passes = 0
    for passes in range(1, MAX_W_PASSES + 1):
        abar, bbar = _solve_sqrt_phibar(a, b, fp, fq, w)
        w_new = -bbar * bbar * t / log_eb
        done = abs(w_new - w) <= 4e-16 * max(1.0, abs(w))
        w = w_new
        if done and passes >= 2:
            break
    abar, bbar = _solve_sqrt_phibar(a, b, fp, fq, w)
    if not a <= abar < bbar <= b:
        return NARROW_REGION
    return abar, bbar, passes, fbar, fbar_min, eps_bar


def solve_bounded(chart, j, t, tol=Tolerances()):
    """Plan for region ``j`` lying between chart entries ``j`` and ``j+1``."""
    n = chart.n_regions
    if not 0 <= j < n - 1:
        raise IndexError(f"region {j} is not bounded on the right (chart has {n} regions)")
    p, q = chart.strengths[j]
    phi_l = chart.entries[j].phi
    phi_r = chart.entries[j + 1].phi
    budget = tol.roundoff_budget / t
    if phi_l >= budget:
        return _reject(j, ROUNDOFF_DOMINATED)

    a = math.sqrt(phi_l)
    # round-off keeps sqrt(phibar_l) + sqrt(phibar_r) below 2 sqrt(budget)
    b = min(math.sqrt(phi_r), 2.0 * math.sqrt(budget) - a)
    if b <= a:
        return _reject(j, NARROW_REGION)
    assert q > 0.0, "right boundary of a bounded region is always a pole"

    ceiling = 2.0 * math.sqrt(budget) * (1.0 - 1e-10)
    for _ in range(MAX_EDGE_PASSES):
        sol = _solve_edges(a, b, p, q, t, tol)
        if isinstance(sol, str):
            return _reject(j, sol)
        abar, bbar, passes, fbar, fbar_min, eps_bar = sol
        excess = abar + bbar - ceiling
        if excess < 0.0:
            break
        # the round-off bound applies to phibar_right; pull the effective edge in
        b -= excess + 1e-12 * ceiling
        if b <= a:
            return _reject(j, NARROW_REGION)
    else:
        return _reject(j, ROUNDOFF_DOMINATED)
    log_eb = math.log(eps_bar)

    w = -bbar * bbar * t / log_eb
    sq_mu = ((1.0 + w) * abar + bbar) / (2.0 + w)
    mu = sq_mu * sq_mu
    h = -2.0 * math.pi / log_eb * (bbar - abar) / ((1.0 + w) * abar + bbar)
    n_exact = math.sqrt(1.0 - log_eb / (t * mu)) / h

    geom = BoundedRegionGeometry(
        phi_left=phi_l,
        phi_right=b * b,
        phibar_left=abar * abar,
        phibar_right=bbar * bbar,
        cstar=1.0 - a / sq_mu,
        dstar=b / sq_mu - 1.0,
        cbar=1.0 - abar / sq_mu,
        dbar=bbar / sq_mu - 1.0,
        w=w,
        fbar=fbar,
        fbar_min=fbar_min,
        eps_bar=eps_bar,
    )
    return ContourPlan(
        region_index=j,
        mu=mu,
        h=h,
        N=max(1, math.ceil(n_exact)),
        geometry=geom,
        admissible=True,
        residue_indices=list(range(j + 1, n)),
        branch=BOUNDED,
        n_exact=n_exact,
        iterations=passes,
    )


def _cbar_unbounded(A):
    # (3 + A - sqrt(1+12A)) / (A - 4), rationalised to remove the A = 4 singularity
    return (A - 2.0) / (3.0 + A + math.sqrt(1.0 + 12.0 * A))


def _unbounded_params(phibar, t, log_eps):
    """``(N_exact, A, cbar, mu, h)`` balancing DE+, DE- and TE at ``phibar``."""
    pt = phibar * t
    r = log_eps / pt
    n_exact = pt / math.pi * (1.0 - 1.5 * r + math.sqrt(1.0 - 2.0 * r))
    A = math.pi * n_exact / pt
    cbar = _cbar_unbounded(A)
    mu = phibar / (1.0 - cbar) ** 2
    h = (1.0 + 2.0 * cbar) / n_exact
    return n_exact, A, cbar, mu, h


def solve_unbounded(chart, t, tol=Tolerances()):
    """Plan for the last region, unbounded on the right.

    Raises :class:`IterationDivergenceError` when ``fbar`` does not enter
    ``[fbar_min_floor, fbar_max]`` within ten updates of ``phibar``.
    """
    j = chart.n_regions - 1
    p = chart.strengths[j][0]
    phi_j = chart.entries[j].phi
    log_eps = tol.log_eps
    budget = tol.roundoff_budget / t
    if phi_j >= budget:
        return _reject(j, ROUNDOFF_DOMINATED)
    target = tol.fbar_tar if tol.fbar_tar is not None else math.sqrt(tol.fbar_min_floor * tol.fbar_max)
    shrink = target ** (-1.0 / p) if p > 0.0 else 0.0
    sq_phi = math.sqrt(phi_j)

    phibar = phi_j * (1.0 + 1e-8) + 1e-8
    for it in range(1, MAX_FBAR_ITERATIONS + 1):
        n_exact, A, cbar, mu, h = _unbounded_params(phibar, t, log_eps)
        if p == 0.0:
            fbar = 1.0
        else:
            gap = (math.sqrt(phibar) - sq_phi) / math.sqrt(mu)
            fbar = gap ** (-p)
        if tol.fbar_min_floor <= fbar <= tol.fbar_max:
            break
        phibar = (shrink * math.sqrt(mu) + sq_phi) ** 2
    else:
        raise IterationDivergenceError(
            f"fbar={fbar:.6g} outside [{tol.fbar_min_floor}, {tol.fbar_max}] after "
            f"{MAX_FBAR_ITERATIONS} iterations in region {j}"
        )

    branch = UNBOUNDED
    if mu * t > tol.roundoff_budget:
        # round-off exceeds DE-: pin mu at the round-off ceiling
        branch = ROUNDOFF
        mu = budget
        phibar = (shrink * math.sqrt(mu) + sq_phi) ** 2
        fbar = target if p > 0.0 else 1.0
        if phibar >= budget:
            return _reject(j, ROUNDOFF_DOMINATED)
        log_mach = tol.log_mach
        n_exact = log_eps * math.sqrt(-log_mach) / (
            2.0 * math.pi * (math.sqrt(phibar * t) - math.sqrt(tol.roundoff_budget))
        )
        h = math.sqrt(log_mach / (log_mach - log_eps)) / n_exact
        cbar = 1.0 - math.sqrt(phibar / mu)

    sq_mu = math.sqrt(mu)
    geom = BoundedRegionGeometry(
        phi_left=phi_j,
        phi_right=math.inf,
        phibar_left=phibar,
        phibar_right=math.inf,
        cstar=1.0 - sq_phi / sq_mu,
        dstar=math.inf,
        cbar=cbar,
        dbar=math.inf,
        w=math.nan,
        fbar=fbar,
        fbar_min=tol.fbar_min_floor,
        eps_bar=tol.eps,
    )
    return ContourPlan(
        region_index=j,
        mu=mu,
        h=h,
        N=max(1, math.ceil(n_exact)),
        geometry=geom,
        admissible=True,
        residue_indices=[],
        branch=branch,
        n_exact=n_exact,
        iterations=it,
    )


def plan_region(chart, j, t, tol=Tolerances()):
    if j < chart.n_regions - 1:
        return solve_bounded(chart, j, t, tol)
    try:
        return solve_unbounded(chart, t, tol)
    except IterationDivergenceError:
        return _reject(j, DIVERGED)


def plan_all(chart, t, tol=Tolerances()):
    """Plan every region and pick the admissible one with the fewest nodes.

    Returns ``(plans, selected)``. Ties in ``N`` go to the smaller ``mu``.
    """
    plans = [plan_region(chart, j, t, tol) for j in range(chart.n_regions)]
    ok = [pl for pl in plans if pl.admissible]
    if not ok:
        reasons = [(pl.region_index, pl.rejection) for pl in plans]
        raise NoAdmissibleRegionError(
            "no admissible region: " + ", ".join(f"R{j}={r}" for j, r in reasons), reasons
        )
    best = min(ok, key=lambda pl: (pl.N, pl.mu))
    return plans, best.region_index


def balancing_residuals(plan, t, tol=Tolerances()):
    """Relative residuals of the error-balancing equalities an admissible plan solves.

    Uses the unrounded node count. Bounded regions balance both
    discretisation errors and truncation against ``log(eps/fbar)``; the
    unbounded region does the same against ``log(eps)``, with the left
    discretisation error replaced by round-off on the round-off branch.
    """
    g = plan.geometry
    mu, h, n = plan.mu, plan.h, plan.n_exact
    trunc = mu * t * (1.0 - h * h * n * n)
    if plan.branch == BOUNDED:
        target = math.log(g.eps_bar)
        eqs = [-2.0 * math.pi * g.cbar / h, -2.0 * math.pi * g.dbar / h + g.phibar_right * t, trunc]
    elif plan.branch == UNBOUNDED:
        target = tol.log_eps
        eqs = [-2.0 * math.pi * g.cbar / h, -(math.pi**2) / (mu * t * h * h) + 2.0 * math.pi / h, trunc]
    else:
        target = tol.log_eps
        eqs = [-2.0 * math.pi * g.cbar / h, mu * t + tol.log_mach, trunc]
    return [abs(e - target) / abs(target) for e in eqs]
