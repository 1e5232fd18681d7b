from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from mirrormaps.mirrormap import (
    ALL_POSITIVE,
    ALTERNATING,
    CASE_II,
    CASE_III,
    MirrorData,
    build,
    canonical_coordinate,
    catalan_oracle,
    check_kaluza,
    check_log_ratio,
    check_partial_sum,
    check_positivity,
    check_round_trip,
    classify_z_signs,
    conj5_transform,
    expected_sign_class,
    hat_transform,
)
from mirrormaps.numbers import make_ntuple
from mirrormaps.report import CONFORMING, PASS
from mirrormaps.series import ConstantTermNotOne, TruncatedSeries as TS, inverse

import oracles

DATA = Path(__file__).parent / "data"


def golden(name):
    rows = [line.split("\t") for line in (DATA / name).read_text().splitlines()]
    return {int(m): int(v) for m, v in rows}


@pytest.fixture(scope="module")
def quintic():
    return build(make_ntuple([5]), 200)


def test_build_two_is_catalan_and_closed_form():
    d = build(make_ntuple([2]), 4)
    assert d.q_series == TS([0, 1, 2, 5, 14])
    assert d.z_series == TS([0, 1, -2, 3, -4])


def test_build_rejects_tiny_order():
    with pytest.raises(ValueError):
        build(make_ntuple([2]), 1)


def test_quintic_matches_golden_files():
    d = build(make_ntuple([5]), 12)
    q_gold, z_gold = golden("q5_order12.txt"), golden("z5_order12.txt")
    assert [d.q_series[m] for m in range(1, 13)] == [q_gold[m] for m in range(1, 13)]
    assert [d.z_series[m] for m in range(1, 13)] == [z_gold[m] for m in range(1, 13)]
    assert all(d.q_series[m] > 0 for m in (1, 2, 3))


@pytest.mark.parametrize("entries", [(3,), (4,), (2, 3), (2, 2, 2), (7,)])
def test_canonical_coordinate_matches_naive(entries):
    q = canonical_coordinate(make_ntuple(entries), 8)
    assert list(q.fractions()) == oracles.q_naive(entries, 8)


def test_q_two_is_catalan_to_500():
    q = canonical_coordinate(make_ntuple([2]), 500)
    assert all(q[m] == catalan_oracle(m) for m in range(1, 501))


@pytest.mark.parametrize("m, value", [(1, 1), (4, 14), (10, 16796)])
def test_catalan_oracle(m, value):
    assert catalan_oracle(m) == value


def test_catalan_oracle_domain():
    with pytest.raises(ValueError):
        catalan_oracle(0)


def test_hat_transform_examples():
    assert hat_transform(TS.one(5)) == TS.zero(5)
    geometric = inverse(TS([1, -1, 0, 0, 0]))
    assert hat_transform(geometric) == TS.variable(4)
    f2 = build(make_ntuple([2]), 3).f_series
    assert hat_transform(f2) == TS([0, 2, 2, 4])
    with pytest.raises(ConstantTermNotOne):
        hat_transform(TS([2, 1]))


@pytest.mark.parametrize("entries", [(3,), (2, 5), (2, 2, 2)])
def test_hat_transform_convolution_relation(entries):
    f = build(make_ntuple(entries), 30).f_series
    h = hat_transform(f)
    for n in range(31):
        conv = f[n] - sum(h[k] * f[n - k] for k in range(1, n + 1))
        assert conv == (1 if n == 0 else 0)


def test_kaluza_three():
    assert check_kaluza(make_ntuple([3]), 100).outcome == PASS


@pytest.mark.parametrize("entries, order", [((2, 6), 200), ((2,), 500), ((5,), 200)])
def test_positivity_examples(entries, order):
    d = build(make_ntuple(entries), order)
    assert check_positivity(d).outcome == PASS


@pytest.mark.parametrize("entries", [(2,), (3,), (5,), (2, 6), (3, 4), (2, 2, 2)])
def test_exact_checks_pass(entries):
    d = build(make_ntuple(entries), 80)
    for check in (check_round_trip, check_log_ratio, check_partial_sum):
        rep = check(d)
        assert rep.outcome == PASS, rep.to_json()


def test_partial_sum_flags_an_excess():
    d = build(make_ntuple([2]), 10)
    doubled = MirrorData(d.n, d.order, d.f_series, d.g_series, d.q_series * 4, d.z_series)
    rep = check_partial_sum(doubled)
    assert rep.outcome == "fail" and rep.witnesses


def test_positivity_witness_on_tampered_series():
    d = build(make_ntuple([3]), 10)
    bad_q = TS(list(d.q_series.coeffs[:5]) + [0] * 6)
    rep = check_positivity(MirrorData(d.n, d.order, d.f_series, d.g_series, bad_q, d.z_series))
    assert rep.outcome == "fail"
    assert rep.witnesses[0][0] == 5


@pytest.mark.parametrize("entries, expected", [
    ((2,), ALTERNATING), ((3,), ALTERNATING), ((2, 6), ALTERNATING),
    ((5,), CASE_II), ((3, 3), CASE_II), ((7,), CASE_III), ((2, 2, 2, 2, 2), CASE_III),
])
def test_expected_sign_class(entries, expected):
    assert expected_sign_class(make_ntuple(entries)) == expected


def test_conj2_two_alternates():
    rep = classify_z_signs(build(make_ntuple([2]), 100))
    assert rep.pattern == ALTERNATING and rep.conforming


def test_conj2_quintic_case_ii(quintic):
    rep = classify_z_signs(quintic)
    assert rep.pattern == CASE_II and rep.conforming
    z = quintic.z_series
    assert z[1] > 0 and z[3] > 0
    assert all(z[m] < 0 for m in range(2, 201) if m != 3)


def test_conj2_three_three():
    rep = classify_z_signs(build(make_ntuple([3, 3]), 200))
    assert rep.pattern == CASE_II and rep.conforming


def test_conj2_zero_coefficient_breaks_every_class():
    d = build(make_ntuple([2]), 8)
    cs = list(d.z_series.coeffs)
    cs[4] = 0
    rep = classify_z_signs(MirrorData(d.n, d.order, d.f_series, d.g_series, d.q_series, TS(cs)))
    assert rep.pattern == "other"
    assert rep.first_violation[0] == 4


def test_conj5_power_zero_is_positivity(quintic):
    rep = conj5_transform(quintic, 0)
    assert rep.pattern == ALL_POSITIVE and rep.conforming


def test_conj5_quintic_power_one():
    d = build(make_ntuple([5]), 100)
    rep = conj5_transform(d, 1)
    assert rep.conforming
    assert rep.observed_prefix[0] == -1


def test_conj5_two_two_two_power_three():
    rep = conj5_transform(build(make_ntuple([2, 2, 2]), 150), 3)
    assert rep.conforming


def test_conj5_power_range(quintic):
    with pytest.raises(ValueError):
        conj5_transform(quintic, -1)
    with pytest.raises(ValueError):
        conj5_transform(quintic, 200)


def test_sign_report_to_check_outcome(quintic):
    from mirrormaps.mirrormap import sign_report_to_check
    import time
    rep = sign_report_to_check("conj2", quintic, classify_z_signs(quintic), time.perf_counter())
    assert rep.outcome == CONFORMING


tuples = st.lists(st.integers(min_value=2, max_value=8), min_size=1, max_size=3)


@settings(max_examples=15, deadline=None)
@given(tuples, st.integers(min_value=2, max_value=40))
def test_build_invariants(entries, order):
    d = build(make_ntuple(entries), order)
    assert d.q_series.is_integral()
    assert check_positivity(d).outcome == PASS
    assert check_round_trip(d).outcome == PASS
    assert check_log_ratio(d).outcome == PASS
    assert check_partial_sum(d).outcome == PASS
