import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mirrormaps.analytic import (
    TailNotConvergent,
    asymptotic_fit,
    b_constant,
    b_constant_fit,
    c_k,
    check_critical_inequality,
    critical_values,
    f_at_c,
    k15_minimum,
    krit_check,
    phibar,
    qc_value,
    radius_estimate,
    radius_fit,
    rho_value,
    s_value,
    stirling_bound_check,
    zeta_interval,
)
from mirrormaps.interval import as_fraction_bounds
from mirrormaps.mirrormap import build
from mirrormaps.numbers import b_sequence, make_ntuple
from mirrormaps.report import FAIL, INDETERMINATE, PASS

PREC = 100
DIVERGENT = [(2,), (3,), (4,), (6,), (2, 2)]


def nt(*entries):
    return make_ntuple(entries)


def high_precision(fn):
    """Exact Fraction of an mpmath value computed at 300 bits."""
    with mpmath.workprec(300):
        sign, man, exp, _ = fn()._mpf_
    return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)


# -- critical values -------------------------------------------------------

def test_rho_two_is_exactly_one():
    r = rho_value(nt(2), PREC)
    assert r.is_exact() and r.contains(1)


@pytest.mark.parametrize("entries, value", [((3,), 0.163033), ((2, 6), 0.00433342)])
def test_rho_published_decimals(entries, value):
    r = rho_value(make_ntuple(entries), PREC)
    assert abs(float(r) - value) < 1e-6


def test_rho_three_closed_form():
    r = rho_value(nt(3), PREC)
    assert r.contains(high_precision(lambda: mpmath.exp(-mpmath.pi / mpmath.sqrt(3))))


@pytest.mark.parametrize("entries", [(2,), (3,), (2, 6), (5,), (2, 3), (3, 3), (2, 2, 2, 2), (12,)])
def test_s_value_negative(entries):
    s = s_value(make_ntuple(entries), PREC, budget=2000)
    assert s.certainly_lt(0)


def test_s_value_quintic_fine_radius_is_out_of_reach():
    # the polynomial tail bound cannot reach 1e-20 within 10^4 terms
    with pytest.raises(TailNotConvergent):
        s_value(nt(5), PREC, budget=10_000, target_radius=1e-20)


def test_s_value_reachable_radius():
    s = s_value(nt(5), PREC, budget=10_000, target_radius=1e-6)
    assert float(s.radius) <= 1e-6 and s.certainly_lt(0)


@pytest.mark.parametrize("entries", DIVERGENT)
def test_qc_is_one_in_divergent_cases(entries):
    n = make_ntuple(entries)
    q = qc_value(n, PREC)
    assert q.is_exact() and q.contains(1)
    assert f_at_c(n, PREC) is None
    assert critical_values(n, PREC, budget=100).f_divergent


def test_qc_quintic_in_unit_interval_and_above_partial_sums():
    n = nt(5)
    q = qc_value(n, PREC)
    assert q.certainly_gt(0) and q.certainly_lt(1)
    series = build(n, 60).q_series
    partial = Fraction(0)
    lo, _ = as_fraction_bounds(q)
    for m in range(1, 61):
        nxt = partial + Fraction(series[m], n.c_constant ** m)
        assert nxt > partial
        partial = nxt
    assert partial <= lo


def test_qc_quintic_fine_radius_is_out_of_reach():
    with pytest.raises(TailNotConvergent):
        qc_value(nt(5), PREC, budget=10_000, target_radius=1e-10)


def test_qc_two_two_two_two():
    q = qc_value(nt(2, 2, 2, 2), PREC)
    assert q.certainly_gt(0) and q.certainly_lt(1)


def test_qc_two_six_encloses_exp_minus_two_pi():
    # the modular description of this case puts the singularity at q = e^(-2 pi)
    q = qc_value(nt(2, 6), PREC)
    assert q.contains(high_precision(lambda: mpmath.exp(-2 * mpmath.pi)))


@pytest.mark.parametrize("entries, relation", [
    ((5,), "rho>qc"), ((2, 3), "rho>qc"), ((2, 6), "rho>qc"),
    ((3,), "rho<qc"), ((4,), "rho<qc"), ((2, 2), "rho=qc"), ((2,), "rho=qc"),
])
def test_critical_trichotomy(entries, relation):
    rep = check_critical_inequality(make_ntuple(entries), PREC)
    assert rep.outcome == PASS
    assert rep.parameters["relation"] == relation


def test_critical_small_budget_is_indeterminate():
    rep = check_critical_inequality(nt(2, 6), 64, budget=2, checkpoints=(2,))
    assert rep.outcome == INDETERMINATE
    assert rep.witnesses


# -- the totient criterion -------------------------------------------------

@pytest.mark.parametrize("s", [Fraction(2), Fraction(5, 2), Fraction(4), Fraction(15, 2)])
def test_zeta_interval_encloses(s):
    z = zeta_interval(s, 128)
    assert z.contains(high_precision(lambda: mpmath.zeta(mpmath.mpf(s.numerator) / s.denominator)))


def test_c_k_shape():
    # decreasing toward 1 as k grows past 4
    vals = [float(c_k(k, 64)) for k in (4, 6, 10, 15, 30)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 1
    assert float(c_k(1, 64)) == float(c_k(4, 64))


@pytest.mark.parametrize("n", [2, 3, 5, 10, 100, 10 ** 6])
def test_phibar_is_at_least_one(n):
    assert phibar(n, 64).certainly_ge(1)


@pytest.mark.parametrize("entries", [(5,), (2, 2, 2, 2), (3, 3), (8,), (2, 12), (7, 7)])
def test_krit_verified_by_some_route(entries):
    rep = krit_check(make_ntuple(entries), PREC)
    assert rep.inequality_verified
    u8_route = rep.fallback_u8 is not None and rep.fallback_u8.certainly_lt(rep.rho)
    assert rep.inequality_verified == (rep.krit_holds or u8_route)


def test_krit_needs_phi_four():
    with pytest.raises(ValueError):
        krit_check(nt(2, 6), PREC)


def test_k15_minimum_small_range():
    value, where = k15_minimum(10 ** 4)
    assert value >= -9
    assert 2 <= where <= 10 ** 4


@pytest.mark.parametrize("entries, m_max", [((5,), 200), ((2, 2), 1), ((3, 4), 10), ((2, 6), 100)])
def test_stirling_bound(entries, m_max):
    assert stirling_bound_check(make_ntuple(entries), m_max).outcome == PASS


def test_stirling_two_two_equality_boundary():
    n = nt(2, 2)
    assert b_sequence(n, 1)[1] * 2 ** n.phi_total == n.c_constant


# -- heuristic fits --------------------------------------------------------

@pytest.fixture(scope="module")
def z3_series():
    return build(nt(3), 250).z_series


def test_radius_estimate_three(z3_series):
    est = radius_estimate(z3_series)
    assert not est.certified
    assert abs(float(est) - 0.163033) < 1e-3


def test_ratio_method_agrees(z3_series):
    a = radius_fit(z3_series, "domb_sykes")
    b = radius_fit(z3_series, "ratio")
    assert abs(a.radius - b.radius) < 5e-3
    with pytest.raises(ValueError):
        radius_fit(z3_series, "nonsense")


def test_b_constant_three_closed_form():
    assert b_constant(nt(3)) == pytest.approx(math.sqrt(3) / (2 * math.pi), rel=1e-12)
    assert abs(b_constant_fit(nt(3), 300) - math.sqrt(3) / (2 * math.pi)) < 1e-4


def test_asymptotic_constant_phi_one():
    rep = asymptotic_fit(build(nt(2), 500))
    assert rep.outcome == PASS
    assert rep.parameters["constant_error"] < 0.02


def test_asymptotic_phi_two_is_not_a_failure():
    rep = asymptotic_fit(build(nt(3), 200))
    assert rep.outcome in (PASS, INDETERMINATE)
    assert rep.outcome != FAIL


def test_asymptotic_needs_order():
    with pytest.raises(ValueError):
        asymptotic_fit(build(nt(5), 50))


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(min_value=2, max_value=12), min_size=1, max_size=3))
def test_qc_bounded_by_one(entries):
    n = make_ntuple(entries)
    q = qc_value(n, 64, budget=300)
    assert q.certainly_gt(0) and q.certainly_le(1)
