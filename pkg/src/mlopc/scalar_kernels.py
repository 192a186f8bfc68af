"""Real/complex scalar helpers used across the package.

Every complex power goes through :func:`cpow_principal`, whose branch cut runs
along the negative real axis with ``Arg`` taking values in ``(-pi, pi]``.
"""

import math

import numpy as np

from ._backend import USE_NUMBA, njit
from .errors import DomainError, PoleError

__all__ = [
    "gamma_real",
    "rgamma_real",
    "principal_arg",
    "cpow_principal",
    "erfc_real",
    "two_sum",
    "fast_two_sum",
    "XPAccumulator",
]


_PI_INSIDE = math.nextafter(math.pi, 0.0)


def _is_nonpositive_integer(x):
    return x <= 0.0 and x == math.floor(x)


def gamma_real(x):
    """Euler's gamma function on the real line.

    Raises :class:`PoleError` at ``0, -1, -2, ...``. Overflow (``x > 171.6``)
    returns ``inf``.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"gamma_real needs a finite argument, got {x!r}")
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x!r}")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


def rgamma_real(x):
    """Reciprocal gamma ``1/Gamma(x)``; exactly zero at the poles of gamma."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"rgamma_real needs a finite argument, got {x!r}")
    if _is_nonpositive_integer(x):
        return 0.0
    if x > 171.0:
        # 1/Gamma underflows gracefully through the log form
        return math.exp(-math.lgamma(x))
    if x < -170.0:
        # reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
        s = math.sin(math.pi * (x - 2.0 * math.floor(x / 2.0)))
        logm = math.lgamma(1.0 - x) + math.log(abs(s)) - math.log(math.pi)
        if logm > 709.0:
            return math.copysign(math.inf, s)
        return math.copysign(math.exp(logm), s)
    return 1.0 / math.gamma(x)


def principal_arg(s):
    """``Arg s`` in ``(-pi, pi]``; points on the negative real axis map to ``+pi``
    even when the imaginary part is a negative zero.

    Off the axis the result is odd in ``Im s``. An angle that would round to
    ``+-pi`` is pulled in by one ulp so the range stays half open.
    """
    re, im = s.real, s.imag
    if im == 0.0:
        return math.pi if re < 0.0 else 0.0
    th = math.atan2(abs(im), re)
    if th == math.pi:
        th = _PI_INSIDE
    return th if im > 0.0 else -th


def cpow_principal(s, a):
    """Principal power ``s**a = exp(a (ln|s| + i Arg s))`` for real ``a``."""
    s = complex(s)
    a = float(a)
    if s == 0:
        if a > 0.0:
            return 0j
        raise DomainError(f"0**{a!r} is undefined")
    try:
        mod = math.pow(abs(s), a)
    except OverflowError:
        mod = math.inf
    ang = a * principal_arg(s)
    c, sn = math.cos(ang), math.sin(ang)
    if math.isinf(mod):
        # keep the direction, avoid inf * 0
        return complex(math.copysign(math.inf, c) if c else 0.0, math.copysign(math.inf, sn) if sn else 0.0)
    return complex(mod * c, mod * sn)


def erfc_real(x):
    """Complementary error function, relative error below 1e-14."""
    return math.erfc(float(x))


@njit
def two_sum(a, b):
    """Error-free transformation ``a + b = s + e`` (Knuth)."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


@njit
def fast_two_sum(a, b):
    """Error-free ``a + b = s + e`` assuming ``|a| >= |b|`` (Dekker)."""
    s = a + b
    e = b - (s - a)
    return s, e


@njit
def _dd_add_array(hi, lo, values):
    for i in range(values.shape[0]):
        s, e = two_sum(hi, values[i])
        e += lo
        hi, lo = fast_two_sum(s, e)
    return hi, lo


class XPAccumulator:
    """Double-double running sum ``hi + lo``.

    After every renormalisation ``|lo| <= ulp(hi)/2``, so the pair carries
    roughly twice the working precision.

    >>> XPAccumulator().add(1.0).add(1e-20).add(-1.0).value
    1e-20
    """

    __slots__ = ("hi", "lo")

    def __init__(self, hi=0.0, lo=0.0):
        self.hi = float(hi)
        self.lo = float(lo)

    def add(self, x):
        s, e = two_sum(self.hi, float(x))
        e += self.lo
        self.hi, self.lo = fast_two_sum(s, e)
        return self

    def add_array(self, values):
        arr = np.ascontiguousarray(values, dtype=np.float64).ravel()
        if USE_NUMBA:
            self.hi, self.lo = _dd_add_array(self.hi, self.lo, arr)
        else:
            for v in arr.tolist():
                self.add(v)
        return self

    @property
    def value(self):
        return self.hi + self.lo

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"XPAccumulator(hi={self.hi!r}, lo={self.lo!r})"


def csum(values):
    """Compensated sum of a complex sequence (real and imaginary parts apart)."""
    arr = np.asarray(values, dtype=np.complex128).ravel()
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
