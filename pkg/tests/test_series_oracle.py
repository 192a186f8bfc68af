import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mlopc.errors import OracleNonConvergenceError
from mlopc.series_oracle import OracleConfig, ml_closed_form, ml_closed_form_mp, ml_series, ml_series_mp
from mlopc.singularity_map import MLParams

mp = mpmath.mp


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(working_digits=20)
    with pytest.raises(ValueError):
        OracleConfig(max_terms=50)
    assert OracleConfig().ratio == Fraction(1, 10**100)


def test_series_examples():
    assert ml_series(MLParams(1.0), 1.0) == pytest.approx(2.718281828459045, rel=1e-16)
    assert ml_series(MLParams(2.0), -1.0) == pytest.approx(0.5403023058681398, rel=1e-16)
    assert ml_series(MLParams(1.0, 1.0, 2.0), 1.0) == pytest.approx(5.43656365691809, rel=1e-15)


def test_closed_form_examples():
    assert ml_closed_form(MLParams(1.0), -1.0) == pytest.approx(0.36787944117144233, rel=1e-16)
    assert ml_closed_form(MLParams(0.3, 2.0, 1.7), 0.0) == 1.0
    ref = math.e * math.erfc(-1.0)
    assert ml_closed_form(MLParams(0.5), 1.0) == pytest.approx(ref, rel=1e-15)
    assert ml_closed_form(MLParams(0.7), 1.0) is None


def test_pole_coefficients_vanish():
    # beta = 0: the k = 0 term sits at a pole of gamma, E_{1,0}(z) = z e^z
    z = 0.75 - 0.5j
    assert ml_series(MLParams(1.0, 0.0, 1.0), z) == pytest.approx(z * cmath.exp(z), rel=1e-15)


IDENTITIES = [(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (0.5, 1.0, 1.0), (1.0, 1.0, 2.0)]


@pytest.mark.parametrize("abg", IDENTITIES, ids=["exp", "cosh", "erfc", "prabhakar_1_1_2"])
def test_series_matches_closed_forms(abg):
    cfg = OracleConfig(working_digits=100)
    params = MLParams(*abg)
    rng = random.Random(hash(abg) & 0xFFFF)
    with mpmath.workdps(120):
        for _ in range(50):
            z = cmath.rect(rng.uniform(0.0, 5.0), rng.uniform(-math.pi, math.pi))
            s = ml_series_mp(params, z, cfg)
            c = ml_closed_form_mp(params, z, cfg)
            assert abs(mpmath.mpc(s) - mpmath.mpc(c)) <= mpmath.mpf(10) ** -95 * abs(mpmath.mpc(c))


decimal = st.integers(min_value=10, max_value=300).map(lambda k: k / 100)
# below alpha = 1/2 the series needs far more than max_terms at |z| = 5
alphas = st.integers(min_value=50, max_value=300).map(lambda k: k / 100)


@given(alphas, decimal, st.floats(min_value=0.0, max_value=5.0), st.floats(min_value=-math.pi, max_value=math.pi))
def test_index_shift_recurrence(alpha, beta, r, theta):
    ab = alpha + beta
    assume(Fraction(repr(ab)) == Fraction(repr(alpha)) + Fraction(repr(beta)))
    cfg = OracleConfig(working_digits=30)
    z = cmath.rect(r, theta)
    with mpmath.workdps(60):
        lhs = mpmath.mpc(ml_series_mp(MLParams(alpha, beta), z, cfg))
        rhs = mpmath.mpc(z) * mpmath.mpc(ml_series_mp(MLParams(alpha, ab), z, cfg)) + mpmath.rgamma(
            mpmath.mpf(Fraction(repr(beta)).numerator) / Fraction(repr(beta)).denominator
        )
        assert abs(lhs - rhs) <= mpmath.mpf("1e-25") * max(abs(lhs), mpmath.mpf("1e-300"))


@given(
    st.sampled_from([(0.7, 1.0, 1.0), (0.6, 0.9, 1.2), (1.3, 0.4, 1.0), (math.sqrt(2), 1.0, 1.0)]),
    st.floats(min_value=-8.0, max_value=8.0),
    st.floats(min_value=-8.0, max_value=8.0),
)
def test_conjugation_exact(abg, x, y):
    cfg = OracleConfig(working_digits=40)
    params = MLParams(*abg)
    a = ml_series_mp(params, complex(x, y), cfg)
    b = ml_series_mp(params, complex(x, -y), cfg)
    assert a.real == b.real and a.imag == -b.imag


def test_large_cancellation_is_resolved():
    # E_{0.7}(-50): terms reach ~1e20 while the value is ~7e-3
    lo = ml_series_mp(MLParams(0.7), -50.0, OracleConfig(working_digits=40))
    hi = ml_series_mp(MLParams(0.7), -50.0, OracleConfig(working_digits=100))
    with mpmath.workdps(120):
        assert abs(mpmath.mpf(lo.real) - mpmath.mpf(hi.real)) <= mpmath.mpf(10) ** -38 * abs(mpmath.mpf(hi.real))


def test_irrational_alpha_uses_direct_rgamma():
    params = MLParams(math.sqrt(2), 1.0, 1.0)
    z = 1.5 + 0.5j
    with mpmath.workdps(50):
        a = mpmath.mpf(Fraction(repr(math.sqrt(2))).numerator) / Fraction(repr(math.sqrt(2))).denominator
        ref = mpmath.nsum(lambda k: mpmath.mpc(z) ** k * mpmath.rgamma(a * k + 1), [0, mpmath.inf])
        got = mpmath.mpc(ml_series_mp(params, z, OracleConfig(working_digits=40)))
        assert abs(got - ref) <= mpmath.mpf(10) ** -35 * abs(ref)


def test_non_convergence_is_reported():
    with pytest.raises(OracleNonConvergenceError):
        ml_series(MLParams(0.5), -60.0, OracleConfig(working_digits=30, max_terms=200))


def test_modulus_guard():
    with pytest.raises(ValueError):
        ml_series(MLParams(0.7), 2e3)
