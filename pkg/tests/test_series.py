from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from mirrormaps import series as ser
from mirrormaps.series import (
    ConstantTermNotOne,
    InnerConstantNonzero,
    NonUnitDivisor,
    NonzeroConstantTerm,
    NotInvertible,
    OrderMismatch,
    SeriesError,
    TruncatedSeries as TS,
    alternate,
    compose,
    dilate,
    div,
    eta_product,
    exp_series,
    inverse,
    linear_factor_product,
    log_series,
    mul,
    revert,
    sqrt_series,
)

import oracles

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def series(draw, order=None, const=None, max_order=32):
    if order is None:
        order = draw(st.integers(min_value=0, max_value=max_order))
    cs = draw(st.lists(small_rationals, min_size=order + 1, max_size=order + 1))
    if const is not None:
        cs[0] = const
    return TS(cs, order)


@st.composite
def same_order(draw, count, max_order=20):
    order = draw(st.integers(min_value=0, max_value=max_order))
    return [draw(series(order=order)) for _ in range(count)]


def S(*cs):
    return TS(list(cs))


# -- examples --------------------------------------------------------------

def test_mul_examples():
    assert S(1, 1, 0, 0) * S(1, -1, 0, 0) == S(1, 0, -1, 0)
    assert mul(S(1, 2, 3), TS.zero(2)) == TS.zero(2)
    assert S(1, 1, 1) * S(1, 1, 0) == S(1, 2, 2)


def test_inverse_examples():
    assert inverse(S(1, -1, 0, 0)) == S(1, 1, 1, 1)
    a = S(3, 1, Fraction(1, 2), 7)
    assert div(a, a) == TS.one(3)


def test_hat_transform_of_truncated_f2():
    f = S(1, 2, 6)
    assert 1 - inverse(f) == S(0, 2, 2)


def test_exp_examples():
    assert exp_series(TS.zero(4)) == TS.one(4)
    assert exp_series(S(0, 1, 0, 0)) == S(1, 1, Fraction(1, 2), Fraction(1, 6))
    for m in (1, 5, 17):
        one_plus_z = TS.one(m) + TS.variable(m)
        assert exp_series(log_series(one_plus_z)) == one_plus_z


def test_log_and_sqrt_examples():
    assert log_series(inverse(S(1, -1, 0, 0))) == S(0, 1, Fraction(1, 2), Fraction(1, 3))
    assert sqrt_series(TS.one(5)) == TS.one(5)
    one_plus_z = S(1, 1, 0, 0, 0)
    assert sqrt_series(one_plus_z * one_plus_z) == one_plus_z


def test_compose_examples():
    f = S(1, 2, Fraction(3, 4), -5)
    assert compose(f, TS.variable(3)) == f
    geometric = inverse(S(1, -1, 0, 0, 0))
    assert compose(geometric, S(0, 0, 1, 0, 0)) == S(1, 0, 1, 0, 1)


def test_revert_examples():
    assert revert(TS.variable(6)) == TS.variable(6)
    assert revert(S(0, 1, -1, 0)) == S(0, 1, 1, 2)
    catalan_q = S(0, 1, 2, 5, 14)
    assert revert(catalan_q) == S(0, 1, -2, 3, -4)


def test_substitution_examples():
    f = S(1, 3, -2, 5)
    assert dilate(f, 1) == f
    assert dilate(S(1, 1, 0, 0), 3) == S(1, 0, 0, 1)
    assert dilate(S(1, 1, 1, 1, 1), 2) == S(1, 0, 1, 0, 1)
    assert alternate(S(1, 1, 1)) == S(1, -1, 1)
    assert alternate(alternate(f)) == f


def test_eta_product_examples():
    assert eta_product([(1, 1)], 3) == S(1, -1, -1, 0)
    assert eta_product([], 7) == TS.one(7)
    # the full product over n: partitions of 4 into even parts are 4 and 2+2
    assert eta_product([(2, -1)], 4) == S(1, 0, 1, 0, 2)


def test_inverse_eta_counts_partitions():
    counts = [1] + [0] * 30
    for part in range(1, 31):
        for total in range(part, 31):
            counts[total] += counts[total - part]
    assert list(eta_product([(1, -1)], 30).coeffs) == counts


def test_eta_product_pentagonal():
    e = eta_product([(1, 1)], 40)
    expected = [0] * 41
    for k in range(-6, 7):
        p = k * (3 * k - 1) // 2
        if 0 <= p <= 40:
            expected[p] += (-1) ** (k % 2)
    assert list(e.coeffs) == expected


def test_linear_factor_product_matches_multiplication():
    order = 15
    direct = TS.one(order)
    for d, sign, e in [(1, 1, 2), (3, -1, 1), (2, 1, -1)]:
        factor = TS.one(order) + sign * TS.monomial(d, order)
        direct = direct * (factor ** e if e > 0 else inverse(factor) ** (-e))
    assert linear_factor_product([(1, 1, 2), (3, -1, 1), (2, 1, -1)], order) == direct


# -- errors ----------------------------------------------------------------

def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        S(1, 2) + S(1, 2, 3)
    with pytest.raises(OrderMismatch):
        compose(S(1, 2), S(0, 1, 1))


def test_error_classes():
    with pytest.raises(NonUnitDivisor):
        inverse(S(0, 1, 2))
    with pytest.raises(NonzeroConstantTerm):
        exp_series(S(1, 1))
    with pytest.raises(ConstantTermNotOne):
        log_series(S(2, 1))
    with pytest.raises(ConstantTermNotOne):
        sqrt_series(S(4, 1))
    with pytest.raises(InnerConstantNonzero):
        compose(S(1, 1), S(1, 1))
    with pytest.raises(NotInvertible):
        revert(S(0, 0, 1))
    with pytest.raises(NotInvertible):
        revert(S(1, 1, 1))
    with pytest.raises(SeriesError):
        dilate(S(1, 1), 0)


def test_text_round_trip_and_format():
    s = S(1, Fraction(-3, 4), 0)
    text = s.to_text()
    assert text == "order=2\n0\t1/1\n1\t-3/4\n2\t0/1\n"
    assert TS.from_text(text) == s
    with pytest.raises(SeriesError):
        TS.from_text("0\t1/1\n")


def test_derivative_and_integral_orders():
    s = S(1, 2, 3, 4)
    assert s.derivative() == S(2, 6, 12)
    assert s.integral() == S(0, 1, 1, 1, 1)


# -- conversion kernels ----------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=80), st.data())
def test_fast_convolution_matches_schoolbook(n, data):
    ints = st.integers(min_value=-10 ** 30, max_value=10 ** 30)
    a = data.draw(st.lists(ints, min_size=n + 1, max_size=n + 1))
    b = data.draw(st.lists(ints, min_size=n + 1, max_size=n + 1))
    assert ser._conv(a, b, n) == ser._conv_schoolbook(a, b, n)


@settings(max_examples=60, deadline=None)
@given(same_order(2))
def test_mul_matches_naive_oracle(pair):
    a, b = pair
    assert list(mul(a, b).fractions()) == oracles.mul_naive(a.fractions(), b.fractions(), a.order)


# -- ring axioms -----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(same_order(3, max_order=32))
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) - b == a
    assert a * TS.one(a.order) == a


# -- analytic inverses -----------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(series(const=0, max_order=20))
def test_log_exp_inverse(a):
    assert log_series(exp_series(a)) == a


@settings(max_examples=40, deadline=None)
@given(series(const=1, max_order=20))
def test_exp_log_inverse(a):
    assert exp_series(log_series(a)) == a


@settings(max_examples=40, deadline=None)
@given(series(const=1, max_order=20))
def test_sqrt_square(a):
    assert sqrt_series(a * a) == a
    r = sqrt_series(a)
    assert r * r == a


@settings(max_examples=40, deadline=None)
@given(series(max_order=20))
def test_inverse_times_self(a):
    assume(a[0] != 0)
    assert a * inverse(a) == TS.one(a.order)


# -- reversion -------------------------------------------------------------

@st.composite
def invertible_series(draw, max_order=64):
    a = draw(series(const=0, max_order=max_order))
    assume(a.order >= 1)
    lead = draw(small_rationals.filter(lambda x: x != 0))
    cs = list(a.coeffs)
    cs[1] = lead
    return TS(cs, a.order)


@settings(max_examples=40, deadline=None)
@given(invertible_series(max_order=64))
def test_revert_round_trip(a):
    b = revert(a)
    ident = TS.variable(a.order)
    assert compose(a, b) == ident
    assert compose(b, a) == ident


@settings(max_examples=40, deadline=None)
@given(invertible_series(max_order=16))
def test_revert_matches_lagrange(a):
    assert list(revert(a).fractions()) == oracles.lagrange_revert(a.fractions(), a.order)


@settings(max_examples=40, deadline=None)
@given(same_order(2, max_order=14))
def test_compose_matches_naive(pair):
    outer, inner = pair
    cs = list(inner.coeffs)
    cs[0] = 0
    inner = TS(cs, inner.order)
    assert list(compose(outer, inner).fractions()) == oracles.compose_naive(
        outer.fractions(), inner.fractions(), outer.order)
