import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlopc.errors import InvalidParameterError, UnsupportedParametersError
from mlopc.singularity_map import (
    BRANCH_POINT,
    MLParams,
    build_chart,
    origin_strength,
    phi,
    pole_index_set,
    poles,
    root_residual,
)


def test_params_validation():
    with pytest.raises(InvalidParameterError):
        MLParams(0.0)
    with pytest.raises(InvalidParameterError):
        MLParams(1.0, 1.0, -1.0)
    with pytest.raises(InvalidParameterError):
        MLParams(float("nan"))
    p = MLParams(1, 2, 1)
    assert (p.alpha, p.beta, p.gamma) == (1.0, 2.0, 1.0)


def test_support_guard_names_condition():
    with pytest.raises(UnsupportedParametersError, match="alpha"):
        MLParams(1.2, 1.0, 1.3).check_supported(math.pi)
    with pytest.raises(UnsupportedParametersError, match=r"\|Arg z\|"):
        MLParams(0.8, 1.0, 1.3).check_supported(0.5 * math.pi)
    MLParams(0.6, 0.9, 1.2).check_supported(0.75 * math.pi)


@pytest.mark.parametrize(
    "alpha, theta, expected",
    [(1.0, math.pi, [0]), (1.0, 0.0, [0]), (2.0, math.pi, [-1, 0]), (0.5, math.pi / 2, [0]), (0.5, 0.9 * math.pi, []), (3.0, 0.0, [-1, 0, 1])],
)
def test_pole_index_set(alpha, theta, expected):
    assert pole_index_set(alpha, theta) == expected


@given(
    st.floats(min_value=0.1, max_value=6.0),
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=-math.pi, max_value=math.pi, exclude_min=True),
)
def test_poles_are_roots_on_main_sheet(alpha, r, theta):
    lam = cmath.rect(r, theta)
    for s in poles(alpha, lam):
        assert abs(cmath.phase(s)) <= math.pi + 1e-12
        assert root_residual(alpha, s, lam) < 1e-12


def test_phi_examples():
    assert phi(1.0) == 1.0
    assert phi(-4.0) == 0.0
    assert phi(1j) == pytest.approx(0.5)
    # cancellation-free on the left half plane
    s = complex(-1e8, 1.0)
    assert phi(s) == pytest.approx(0.25e-8, rel=1e-12)


@given(st.floats(min_value=0.01, max_value=10.0), st.floats(min_value=-5.0, max_value=5.0))
def test_phi_of_parabola_point_is_mu(mu, u):
    s = mu * (1j * u + 1.0) ** 2
    assert phi(s) == pytest.approx(mu, rel=1e-9)


def test_origin_strength():
    assert origin_strength(MLParams(0.7, 1.0, 1.0)) == 0.0
    assert origin_strength(MLParams(0.5, 1.5, 1.0)) == 1.0
    assert origin_strength(MLParams(0.5, 2.0, 1.0)) == pytest.approx(1.0)


def test_chart_exp_negative_axis_has_only_origin():
    ch = build_chart(MLParams(1.0), -1.0)
    assert ch.n_regions == 1
    assert ch.entries[0].kind == BRANCH_POINT
    assert ch.strengths == [(0.0, None)]


def test_chart_cos_merges_conjugate_pair():
    ch = build_chart(MLParams(2.0), -1.0)
    assert ch.n_regions == 2
    assert sorted(p.imag for p in ch.entries[1].merged_poles) == pytest.approx([-1.0, 1.0])
    assert ch.entries[1].phi == pytest.approx(0.5)


def test_chart_on_cut_pole_merges_with_origin():
    # alpha = 1/2, lam = i: s = lam**2 = -1 lies on the cut with phi = 0
    ch = build_chart(MLParams(0.5), 1j)
    assert ch.n_regions == 1
    assert len(ch.entries[0].merged_poles) <= 1


def test_chart_sorted_and_strengths():
    ch = build_chart(MLParams(3.5, 1.0, 1.0), cmath.rect(2.0, 0.3))
    phis = ch.phis
    assert phis == sorted(phis)
    assert ch.strengths[-1][1] is None
    assert all(q == 1.0 for _, q in ch.strengths[:-1])
    assert sum(len(e.merged_poles) for e in ch.entries) == len(poles(3.5, cmath.rect(2.0, 0.3)))


def test_chart_rejects_zero():
    with pytest.raises(InvalidParameterError):
        build_chart(MLParams(1.0), 0.0)
