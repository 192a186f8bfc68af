import cmath
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mlopc.contour_solver import (
    BOUNDED,
    FBAR_TOO_LARGE,
    ROUNDOFF,
    ROUNDOFF_DOMINATED,
    UNBOUNDED,
    Tolerances,
    _cbar_unbounded,
    balancing_residuals,
    plan_all,
    plan_region,
    solve_bounded,
    solve_unbounded,
)
from mlopc.errors import NoAdmissibleRegionError
from mlopc.singularity_map import POLE, MLParams, Singularity, SingularityChart, build_chart

EPS_LEVELS = [1e-6, 1e-9, 1e-12, 1e-15]


def check_plan(plan, tol, t):
    assert plan.admissible
    g = plan.geometry
    assert plan.mu > 0 and plan.h > 0 and plan.N >= 1
    assert plan.h * plan.N >= 1.0 - 1e-12 or plan.branch != BOUNDED
    assert max(balancing_residuals(plan, t, tol)) <= 1e-10
    # round-off guard
    assert math.exp(plan.mu * t) * tol.mach <= tol.eps * (1 + 1e-6)
    assert plan.mu * t < tol.roundoff_budget + 1e-9
    sq = math.sqrt(plan.mu)
    assert g.cbar == pytest.approx(1 - math.sqrt(g.phibar_left / plan.mu), rel=1e-12, abs=1e-12)
    if plan.branch == BOUNDED:
        assert g.phi_left <= g.phibar_left < plan.mu < g.phibar_right < g.phi_right
        assert g.dbar == pytest.approx(math.sqrt(g.phibar_right / plan.mu) - 1, rel=1e-12, abs=1e-12)
        p, q = plan_strengths(plan)
        # c* - cbar* and d* - dbar* formed without cancellation
        gap_c = (math.sqrt(g.phibar_left) - math.sqrt(g.phi_left)) / sq
        gap_d = (math.sqrt(g.phi_right) - math.sqrt(g.phibar_right)) / sq
        # with p = 0 the left edge stays on the singularity
        assert gap_c > 0 if p > 0 else gap_c == 0
        assert gap_d > 0 and g.dbar < g.dstar
        if p > 0:
            assert gap_c ** (-p) == pytest.approx(g.fbar, rel=1e-8)
        assert gap_d ** (-q) == pytest.approx(g.fbar, rel=1e-8)
    else:
        p = plan_strengths(plan)[0]
        assert g.phi_left < g.phibar_left if p > 0 else g.phi_left <= g.phibar_left
        assert g.phibar_left < plan.mu
        assert sq > 0


_STRENGTHS = {}


def plan_strengths(plan):
    return _STRENGTHS[id(plan)]


def all_plans(chart, t, tol):
    out = []
    for j in range(chart.n_regions):
        pl = plan_region(chart, j, t, tol)
        _STRENGTHS[id(pl)] = chart.strengths[j]
        out.append(pl)
    return out


def test_exp_region_zero_plan():
    chart = build_chart(MLParams(1.0), 1.0)
    tol = Tolerances()
    pl = solve_bounded(chart, 0, 1.0, tol)
    _STRENGTHS[id(pl)] = chart.strengths[0]
    assert pl.admissible and 0 < pl.mu < 1
    assert pl.residue_indices == [1]
    check_plan(pl, tol, 1.0)


def test_narrow_region_rejected_by_fbar():
    params = MLParams(0.5, 1.0, 1.0)
    entries = [
        Singularity(0j, 0.0, "branch_point", []),
        Singularity(0.999 + 0j, 0.999, POLE, [0.999 + 0j]),
        Singularity(1.0 + 0j, 1.0, POLE, [1.0 + 0j]),
    ]
    chart = SingularityChart(params, 1.0, 0.0, entries, [(0.0, 1.0), (1.0, 1.0), (1.0, None)])
    pl = solve_bounded(chart, 1, 1.0, Tolerances())
    assert not pl.admissible and pl.rejection == FBAR_TOO_LARGE


def test_single_region_selects_zero():
    chart = build_chart(MLParams(0.7), -1.0)
    plans, sel = plan_all(chart, 1.0, Tolerances())
    assert sel == 0 and plans[0].residue_indices == []


@pytest.mark.parametrize("eps", EPS_LEVELS)
def test_unbounded_balancing(eps):
    chart = build_chart(MLParams(0.7), -1.0)
    tol = Tolerances(eps=eps)
    pl = solve_unbounded(chart, 1.0, tol)
    _STRENGTHS[id(pl)] = chart.strengths[0]
    check_plan(pl, tol, 1.0)


def test_branches_seen():
    chart = build_chart(MLParams(0.7), -1.0)
    assert solve_unbounded(chart, 1.0, Tolerances(eps=1e-15)).branch == ROUNDOFF
    assert solve_unbounded(chart, 1.0, Tolerances(eps=1e-6)).branch == UNBOUNDED


def test_node_count_decreases_with_looser_tolerance():
    chart = build_chart(MLParams(0.7), -1.0)
    ns = [solve_unbounded(chart, 1.0, Tolerances(eps=e)).N for e in EPS_LEVELS]
    assert ns == sorted(ns)
    assert ns[0] < ns[-1]


def test_cbar_is_continuous_at_a_equals_four():
    left = _cbar_unbounded(4.0 - 1e-9)
    right = _cbar_unbounded(4.0 + 1e-9)
    mid = _cbar_unbounded(4.0)
    assert abs(left - mid) < 1e-9 and abs(right - mid) < 1e-9
    for A in (0.5, 2.0, 3.0, 7.0, 40.0):
        direct = (3 + A - math.sqrt(1 + 12 * A)) / (A - 4)
        assert _cbar_unbounded(A) == pytest.approx(direct, rel=1e-12)


def test_no_admissible_region():
    # poles far right of the round-off ceiling and a zero-width fbar interval
    chart = build_chart(MLParams(1.0, 3.0, 1.0), 1.0)
    with pytest.raises(NoAdmissibleRegionError) as info:
        plan_all(chart, 10.0, Tolerances(fbar_max=1.0))
    reasons = dict(info.value.reasons)
    assert reasons[1] == ROUNDOFF_DOMINATED
    assert reasons[0] == FBAR_TOO_LARGE


def test_selection_minimises_nodes():
    chart = build_chart(MLParams(3.0, 1.0, 1.0), cmath.rect(1.5, 0.4))
    plans, sel = plan_all(chart, 1.0, Tolerances())
    ok = [p for p in plans if p.admissible]
    assert plans[sel].N == min(p.N for p in ok)
    assert plans[sel].residue_indices == list(range(sel + 1, chart.n_regions))


random_case = st.tuples(
    st.floats(min_value=0.2, max_value=6.0),
    st.floats(min_value=0.1, max_value=3.0),
    st.floats(min_value=1e-2, max_value=1e2),
    st.floats(min_value=-math.pi, max_value=math.pi),
    st.sampled_from(EPS_LEVELS),
)


@given(random_case)
def test_every_admissible_plan_is_consistent(case):
    alpha, beta, r, theta, eps = case
    chart = build_chart(MLParams(alpha, beta, 1.0), cmath.rect(r, theta))
    tol = Tolerances(eps=eps)
    plans = all_plans(chart, 1.0, tol)
    ok = [p for p in plans if p.admissible]
    assume(ok)
    for pl in ok:
        check_plan(pl, tol, 1.0)


@given(random_case)
def test_node_count_monotone_in_eps(case):
    alpha, beta, r, theta, _ = case
    chart = build_chart(MLParams(alpha, beta, 1.0), cmath.rect(r, theta))
    for j in range(chart.n_regions):
        ns = []
        for eps in EPS_LEVELS:
            pl = plan_region(chart, j, 1.0, Tolerances(eps=eps))
            if pl.admissible:
                ns.append(pl.N)
            else:
                ns = None
                break
        if ns:
            assert ns == sorted(ns)
