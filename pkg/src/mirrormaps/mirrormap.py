"""Canonical coordinates, mirror maps and the exact checks run on them."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from .numbers import NTuple, b_sequence, h_sequence
from .report import CONFORMING, FAIL, PASS, CheckReport, elapsed_ms
from .series import (
    ConstantTermNotOne,
    TruncatedSeries,
    compose,
    div,
    exp_series,
    inverse,
    mul,
    power,
    revert,
    shift,
)


class IntegralityViolation(ArithmeticError):
    """A canonical-coordinate coefficient came out non-integral."""


ALL_POSITIVE = "all-positive"
ALTERNATING = "alternating"
CASE_II = "conj2-case-ii"
CASE_III = "conj2-case-iii"
OTHER = "other"


@dataclass(frozen=True)
class MirrorData:
    n: NTuple
    order: int
    f_series: TruncatedSeries
    g_series: TruncatedSeries
    q_series: TruncatedSeries
    z_series: TruncatedSeries


@dataclass
class SignReport:
    pattern: str
    expected: str
    first_violation: Optional[Tuple[int, str]] = None
    observed_prefix: List[int] = field(default_factory=list)

    @property
    def conforming(self) -> bool:
        return self.first_violation is None


def f_series(n: NTuple, order: int) -> TruncatedSeries:
    return TruncatedSeries._raw(tuple(b_sequence(n, order)))


def g_series(n: NTuple, order: int, f: TruncatedSeries = None) -> TruncatedSeries:
    if f is None:
        f = f_series(n, order)
    hs = h_sequence(n, order)
    return TruncatedSeries([h * b for h, b in zip(hs, f.coeffs)], order)


def canonical_coordinate(n: NTuple, order: int, f: TruncatedSeries = None,
                         g: TruncatedSeries = None) -> TruncatedSeries:
    """``z * exp(G/F)`` as an integer series, checked coefficient by coefficient."""
    if f is None:
        f = f_series(n, order)
    if g is None:
        g = g_series(n, order, f)
    e = exp_series(div(g, f))
    if not e.is_integral():
        bad = next(i for i, c in enumerate(e.coeffs) if type(c) is not int)
        raise IntegralityViolation(f"coefficient {bad + 1} of q_{n} is {e.coeffs[bad]}")
    return shift(e, 1)


def build(n: NTuple, order: int) -> MirrorData:
    if order < 2:
        raise ValueError("build needs order >= 2")
    f = f_series(n, order)
    g = g_series(n, order, f)
    q = canonical_coordinate(n, order, f, g)
    z = revert(q)
    ident = TruncatedSeries.variable(order)
    if compose(q, z) != ident or compose(z, q) != ident:
        raise ArithmeticError(f"round trip failed for {n} at order {order}")
    return MirrorData(n=n, order=order, f_series=f, g_series=g, q_series=q, z_series=z)


def hat_transform(f: TruncatedSeries) -> TruncatedSeries:
    """``1 - 1/f`` for ``f`` with constant term 1."""
    if f.coeffs[0] != 1:
        raise ConstantTermNotOne("hat_transform needs constant term 1")
    return 1 - inverse(f)


def catalan_oracle(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    return comb(2 * m, m) // (m + 1)


def _params(d_or_n, order=None, **extra):
    n = d_or_n.n if isinstance(d_or_n, MirrorData) else d_or_n
    p = {"n": n.label}
    if order is not None:
        p["order"] = order
    p.update(extra)
    return p


def check_kaluza(n: NTuple, m_max: int) -> CheckReport:
    """Strict log-convexity ``B(m+1)B(m-1) > B(m)^2`` for ``1 <= m <= m_max``."""
    t0 = time.perf_counter()
    bs = b_sequence(n, m_max + 1)
    witnesses = []
    for m in range(1, m_max + 1):
        if bs[m + 1] * bs[m - 1] <= bs[m] ** 2:
            witnesses.append((m, "B(m+1)B(m-1) <= B(m)^2"))
            break
    return CheckReport("kaluza", _params(n, m_max=m_max), FAIL if witnesses else PASS,
                       witnesses, elapsed_ms(t0))


def _first_nonpositive(s: TruncatedSeries, start: int = 1):
    for i in range(start, s.order + 1):
        if s.coeffs[i] <= 0:
            return i
    return None


def check_positivity(d: MirrorData) -> CheckReport:
    """q-coefficients and hat-F coefficients ``1..M`` strictly positive."""
    t0 = time.perf_counter()
    witnesses = []
    i = _first_nonpositive(d.q_series)
    if i is not None:
        witnesses.append((i, f"q coefficient {d.q_series[i]}"))
    j = _first_nonpositive(hat_transform(d.f_series))
    if j is not None:
        witnesses.append((j, "hat-F coefficient not positive"))
    return CheckReport("positivity", _params(d, d.order), FAIL if witnesses else PASS,
                       witnesses, elapsed_ms(t0))


def check_log_ratio(d: MirrorData) -> CheckReport:
    """``G/F`` has zero constant term and positive coefficients beyond it."""
    t0 = time.perf_counter()
    ratio = div(d.g_series, d.f_series)
    witnesses = []
    if ratio[0] != 0:
        witnesses.append((0, str(ratio[0])))
    i = _first_nonpositive(ratio)
    if i is not None:
        witnesses.append((i, str(ratio[i])))
    return CheckReport("g-over-f", _params(d, d.order), FAIL if witnesses else PASS,
                       witnesses, elapsed_ms(t0))


def check_partial_sum(d: MirrorData) -> CheckReport:
    """``sum_{m<=M} q_m C^-m <= 1``, compared as integers after scaling by ``C^M``."""
    t0 = time.perf_counter()
    c = d.n.c_constant
    total = 0
    for m in range(1, d.order + 1):
        total = total * c + d.q_series[m]
    bound = c ** d.order  # total = C^M * sum_m q_m C^-m
    ok = total <= bound
    witnesses = [] if ok else [(d.order, str(Fraction(total, bound)))]
    return CheckReport("partial-sum", _params(d, d.order), PASS if ok else FAIL,
                       witnesses, elapsed_ms(t0))


def check_round_trip(d: MirrorData) -> CheckReport:
    t0 = time.perf_counter()
    ident = TruncatedSeries.variable(d.order)
    witnesses = []
    for name, s in (("q(z(q))", compose(d.q_series, d.z_series)),
                    ("z(q(z))", compose(d.z_series, d.q_series))):
        if s != ident:
            i = next(k for k in range(d.order + 1) if s[k] != ident[k])
            witnesses.append((i, f"{name} coefficient {s[i]}"))
    return CheckReport("round-trip", _params(d, d.order), FAIL if witnesses else PASS,
                       witnesses, elapsed_ms(t0))


def _sign(c) -> int:
    return (c > 0) - (c < 0)


def _expected_sign(pattern: str, m: int) -> int:
    if pattern == ALTERNATING:
        return 1 if m % 2 else -1
    if pattern == CASE_II:
        return 1 if m in (1, 3) else -1
    if pattern == CASE_III:
        return 1 if m == 1 else -1
    return 1


def expected_sign_class(n: NTuple) -> str:
    if n.phi_total <= 3:
        return ALTERNATING
    if n.phi_total == 4:
        return CASE_II
    return CASE_III


def _violation(signs: List[int], coeffs, pattern: str):
    for m in range(1, len(signs)):
        if signs[m] != _expected_sign(pattern, m):
            return (m, str(coeffs[m]))
    return None


def classify_z_signs(d: MirrorData) -> SignReport:
    """Sign pattern of the mirror-map coefficients ``1..M``; zero breaks every class."""
    if d.order < 5:
        raise ValueError("sign classification needs order >= 5")
    coeffs = d.z_series.coeffs
    signs = [_sign(c) for c in coeffs]
    observed = OTHER
    for pattern in (ALTERNATING, CASE_II, CASE_III, ALL_POSITIVE):
        if _violation(signs, coeffs, pattern) is None:
            observed = pattern
            break
    expected = expected_sign_class(d.n)
    return SignReport(pattern=observed, expected=expected,
                      first_violation=_violation(signs, coeffs, expected),
                      observed_prefix=signs[1:6])


def conj5_series(d: MirrorData, n_power: int) -> TruncatedSeries:
    linear = TruncatedSeries.monomial(1, d.order, d.n.c_constant) - 1
    return mul(power(linear, n_power), d.q_series)


def conj5_transform(d: MirrorData, n_power: int) -> SignReport:
    """Signs of ``(C z - 1)^n q(z)``: positive from ``z^(n+1)`` on.

    The signs of the lower coefficients are recorded in ``observed_prefix``
    (index ``m - 1`` holds the sign at ``z^m``) without being asserted.
    """
    if n_power < 0 or n_power > d.order - 1:
        raise ValueError("need 0 <= n_power <= order - 1")
    s = conj5_series(d, n_power)
    signs = [_sign(c) for c in s.coeffs]
    violation = None
    for m in range(max(1, n_power + 1), d.order + 1):
        if signs[m] <= 0:
            violation = (m, str(s[m]))
            break
    prefix = signs[1:n_power + 2]
    alternates = all(prefix[i] == -prefix[i + 1] for i in range(len(prefix) - 1))
    pattern = ALL_POSITIVE if violation is None and n_power == 0 else (
        ALTERNATING if alternates and violation is None else OTHER)
    return SignReport(pattern=pattern, expected=ALL_POSITIVE if n_power == 0 else ALTERNATING,
                      first_violation=violation, observed_prefix=prefix)


def sign_report_to_check(name: str, d: MirrorData, rep: SignReport, t0: float, **extra) -> CheckReport:
    params = _params(d, d.order, pattern=rep.pattern, expected=rep.expected, **extra)
    if rep.conforming:
        return CheckReport(name, params, CONFORMING, [], elapsed_ms(t0))
    return CheckReport(name, params, FAIL, [rep.first_violation], elapsed_ms(t0))
