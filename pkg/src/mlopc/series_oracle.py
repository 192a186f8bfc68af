"""Reference values by direct series summation in big-float arithmetic.

This module is the independent check for the contour method and never feeds
into it. Parameters given as floats are read through their shortest decimal
representation (``0.7`` means 7/10), which differs from the binary value by
under one ulp. When ``alpha`` is a fraction ``P/Q`` with small ``P`` the
reciprocal gammas follow the exact recurrence
``1/Gamma(x + P) = 1/Gamma(x) / (x (x+1) ... (x+P-1))`` along each residue
class of ``k mod Q``; otherwise every coefficient calls ``rgamma``.

Working precision is raised above ``working_digits`` by the number of digits
lost to cancellation, estimated from the largest term.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import OracleNonConvergenceError

__all__ = ["OracleConfig", "ml_series", "ml_series_mp", "ml_closed_form", "ml_closed_form_mp"]

# consecutive small terms required before summation stops
LOOKAHEAD = 10
# numerator bound for the rational-alpha recurrence
MAX_RECURRENCE_STEP = 64
GUARD_DIGITS = 15


@dataclass(frozen=True)
class OracleConfig:
    working_digits: int = 100
    max_terms: int = 10_000
    stop_ratio: float = None

    def __post_init__(self):
        if self.working_digits < 30:
            raise ValueError("working_digits must be >= 30")
        if self.max_terms < 100:
            raise ValueError("max_terms must be >= 100")

    @property
    def ratio(self):
        if self.stop_ratio is not None:
            return self.stop_ratio
        return Fraction(1, 10**self.working_digits)


def _exact(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(repr(float(x)))


def _triple(params):
    return _exact(params.alpha), _exact(params.beta), _exact(params.gamma)


def _lgamma_abs(x):
    """``log|Gamma(x)|`` in floats; ``None`` at the poles."""
    if x <= 0 and x == math.floor(x):
        return None
    return math.lgamma(x)


def _scan(alpha, beta, gamma, z, cfg):
    """Float pre-scan: log of the largest term and the index it occurs at."""
    a, b, g = float(alpha), float(beta), float(gamma)
    logz = math.log(abs(z))
    lg_g = math.lgamma(g)
    best, kbest = -math.inf, 0
    drop = (cfg.working_digits + GUARD_DIGITS) * math.log(10.0)
    prev = None
    for k in range(cfg.max_terms + 1):
        lg = _lgamma_abs(a * k + b)
        if lg is None:
            prev = None
            continue
        logc = math.lgamma(g + k) - math.lgamma(k + 1.0) - lg_g
        val = logc + k * logz - lg
        if val > best:
            best, kbest = val, k
        if prev is not None and val < prev and val < best - drop and k > kbest + LOOKAHEAD:
            return best, kbest, k
        prev = val
    raise OracleNonConvergenceError(
        f"series for alpha={a}, beta={b}, gamma={g}, |z|={abs(z):.6g} needs more than "
        f"{cfg.max_terms} terms"
    )


class _RGammaStream:
    """Yields ``1/Gamma(alpha*k + beta)`` for k = 0, 1, 2, ... in ``ctx``."""

    def __init__(self, ctx, alpha, beta):
        self.ctx = ctx
        self.alpha = alpha
        self.beta = beta
        self.rational = alpha.denominator <= MAX_RECURRENCE_STEP and alpha.numerator <= MAX_RECURRENCE_STEP
        self.period = alpha.denominator
        self.step = alpha.numerator
        self.cache = {}

    def __call__(self, k):
        ctx = self.ctx
        x = self.alpha * k + self.beta
        if not self.rational:
            return ctx.rgamma(ctx.mpf(x.numerator) / x.denominator)
        slot = k % self.period
        prev = self.cache.get(slot)
        if prev is not None and prev[0] > 0:
            px, pr = prev
            xm = ctx.mpf(px.numerator) / px.denominator
            den = xm
            for i in range(1, self.step):
                den *= xm + i
            r = pr / den
        else:
            r = ctx.rgamma(ctx.mpf(x.numerator) / x.denominator)
        self.cache[slot] = (x, r)
        return r


def _sum(alpha, beta, gamma, z, cfg, dps, k_floor):
    ctx = mpmath.MPContext()
    ctx.dps = dps
    zz = ctx.mpc(z.real, z.imag)
    rg = _RGammaStream(ctx, alpha, beta)
    g = ctx.mpf(gamma.numerator) / gamma.denominator
    coef = ctx.mpf(1)
    zk = ctx.mpc(1)
    total = ctx.mpc(0)
    biggest = ctx.mpf(0)
    ratio = _exact(cfg.ratio)
    ratio = ctx.mpf(ratio.numerator) / ratio.denominator
    quiet = 0
    for k in range(cfg.max_terms + 1):
        term = zk * (coef * rg(k))
        total += term
        mag = abs(term)
        if mag > biggest:
            biggest = mag
        if k >= k_floor and mag < ratio * abs(total):
            quiet += 1
            if quiet >= LOOKAHEAD:
                return ctx, total, biggest
        else:
            quiet = 0
        coef = coef * (g + k) / (k + 1)
        zk = zk * zz
    raise OracleNonConvergenceError(
        f"series did not meet the stopping rule within {cfg.max_terms} terms"
    )


def ml_series_mp(params, z, cfg=OracleConfig()):
    """Sum ``sum_k Gamma(g+k) z**k / (k! Gamma(g) Gamma(a k + b))`` in big floats.

    Returns an ``mpmath.mpc`` carrying ``cfg.working_digits`` significant
    digits. ``|z|`` is limited to 1e3.
    """
    z = complex(z)
    alpha, beta, gamma = _triple(params)
    if alpha <= 0 or gamma <= 0:
        raise ValueError("series oracle needs alpha > 0 and gamma > 0")
    if abs(z) > 1e3:
        raise ValueError(f"series oracle is limited to |z| <= 1e3, got {abs(z):.6g}")
    out = mpmath.MPContext()
    out.dps = cfg.working_digits
    if z == 0:
        ctx = mpmath.MPContext()
        ctx.dps = cfg.working_digits + GUARD_DIGITS
        return out.mpc(ctx.rgamma(ctx.mpf(beta.numerator) / beta.denominator))

    logmax, kmax, _ = _scan(alpha, beta, gamma, z, cfg)
    lost = max(0.0, logmax / math.log(10.0))
    dps = cfg.working_digits + GUARD_DIGITS + int(math.ceil(lost))
    for _ in range(4):
        ctx, total, biggest = _sum(alpha, beta, gamma, z, cfg, dps, kmax)
        # digits cancelled relative to the final value
        if total == 0:
            need = dps + 50
        else:
            need = cfg.working_digits + GUARD_DIGITS + max(0, int(ctx.ceil(ctx.log10(biggest / abs(total)))))
        if need <= dps:
            return out.mpc(total)
        dps = need + 5
    return out.mpc(total)


def ml_series(params, z, cfg=OracleConfig()):
    """Series value rounded to a Python ``complex``."""
    v = ml_series_mp(params, z, cfg)
    return complex(float(v.real), float(v.imag))


def ml_closed_form_mp(params, z, cfg=OracleConfig()):
    """Elementary closed form at working precision, or ``None``.

    Covered: ``z == 0``, ``(1,1,1)`` exp, ``(2,1,1)`` cosh of the principal
    square root (cos w for z=-w**2, cosh w for z=w**2), ``(1/2,1,1)``
    ``exp(z**2) erfc(-z)`` and ``(1,1,2)`` ``(1+z) exp(z)``.
    """
    ctx = mpmath.MPContext()
    ctx.dps = cfg.working_digits + GUARD_DIGITS
    z = complex(z)
    a, b, g = params.alpha, params.beta, params.gamma
    w = ctx.mpc(z.real, z.imag)
    if z == 0:
        return ctx.mpc(ctx.rgamma(ctx.mpf(_exact(b).numerator) / _exact(b).denominator))
    if (b, g) == (1.0, 1.0):
        if a == 1.0:
            return ctx.exp(w)
        if a == 2.0:
            return ctx.cosh(ctx.sqrt(w))
        if a == 0.5:
            return ctx.exp(w * w) * ctx.erfc(-w)
    if (a, b, g) == (1.0, 1.0, 2.0):
        return (1 + w) * ctx.exp(w)
    return None


def ml_closed_form(params, z):
    v = ml_closed_form_mp(params, z, OracleConfig(working_digits=30))
    if v is None:
        return None
    return complex(float(v.real), float(v.imag))
