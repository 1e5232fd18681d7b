"""Certified critical values, the totient criterion, and numerical asymptotics.

The critical values are ``rho = exp(-pi cot(pi/M))`` and ``q_N(1/C)``; the
second is ``exp(S / F(1/C))`` with

    S = sum_m B(m) (H(m) - log C) C^-m,    F(1/C) = sum_m B(m) C^-m.

Both sums are evaluated term by term in interval arithmetic and closed off
with explicit tail bounds, so the returned intervals are enclosures.  The
tail bounds use

    B(m) C^-m <= K (m-1)^(-Phi/2),  K = e^(7 Phi/300) pi^(-Phi/2),  m >= 2,
    0 < log C - H(m) <= Phi / m,                                      m >= 1.

The second line follows from ``H(m) - log C = sum (psi(m + r/N) - psi(m + 1))``
and the monotonicity of the digamma function.  Every summand of ``S`` is
negative, so the partial sums bound ``S`` from above.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np
from mpmath import bernfrac

from .interval import GUARD_BITS, BigFloatInterval
from .numbers import NTuple, b_sequence
from .report import FAIL, INDETERMINATE, PASS, CheckReport, elapsed_ms
from .series import TruncatedSeries

DEFAULT_BUDGET = 10_000
DEFAULT_CHECKPOINTS = (500, 2_000, 10_000)
U8_TERMS = 20


class TailNotConvergent(ArithmeticError):
    """The tail bound cannot reach the requested accuracy within the term budget."""


class InsufficientCoefficients(ValueError):
    pass


Interval = BigFloatInterval


@dataclass
class CriticalValues:
    n: NTuple
    rho: Interval
    s_value: Interval
    f_at_c: Optional[Interval]
    qc: Interval
    terms_used: int

    @property
    def f_divergent(self) -> bool:
        return self.f_at_c is None


@dataclass
class KritReport:
    n: NTuple
    phibar_values: List[Interval]
    c_k: Interval
    lhs: Interval
    rhs: Interval
    krit_holds: bool
    fallback_u8: Optional[Interval]
    rho: Interval
    inequality_verified: bool


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def rho_value(n: NTuple, prec: int = 256) -> Interval:
    """Enclosure of ``exp(-pi cot(pi/M))``; exactly 1 when ``M = 2``."""
    if n.m_max < 2:
        raise ValueError("M must be at least 2")
    if n.m_max == 2:
        return Interval.from_value(1, prec)
    wp = prec + GUARD_BITS
    pi = Interval.pi(wp)
    return (-(pi * (pi / n.m_max).cot())).exp()


def stirling_constant(phi_total: int, prec: int = 256) -> Interval:
    """``K = e^(7 Phi/300) pi^(-Phi/2)``."""
    pi = Interval.pi(prec)
    return Interval.from_value(Fraction(7 * phi_total, 300), prec).exp() / pi.rpow(Fraction(phi_total, 2))


def s_tail_bound(n: NTuple, m_last: int, prec: int = 256) -> Interval:
    """Upper bound for ``|sum_{m > m_last} B(m)(H(m) - log C) C^-m|``: ``2K (m_last-1)^(-Phi/2)``."""
    if m_last < 2:
        raise ValueError("tail bounds need m_last >= 2")
    k = stirling_constant(n.phi_total, prec)
    return k * 2 * Interval.from_value(m_last - 1, prec).rpow(Fraction(-n.phi_total, 2))


def f_tail_bound(n: NTuple, m_last: int, prec: int = 256) -> Interval:
    """Upper bound for ``sum_{m > m_last} B(m) C^-m`` (needs ``Phi >= 3``)."""
    if n.phi_total < 3:
        raise TailNotConvergent("F(1/C) diverges for Phi <= 2")
    if m_last < 2:
        raise ValueError("tail bounds need m_last >= 2")
    s = Fraction(n.phi_total, 2)
    k = stirling_constant(n.phi_total, prec)
    return k * Interval.from_value(m_last - 1, prec).rpow(1 - s) / Interval.from_value(s - 1, prec)


class _CriticalSums:
    """Running interval partial sums of ``S`` and ``F(1/C)``.

    The term ``t_m = B(m) C^-m`` is advanced by its exact rational ratio and
    ``H(m)`` by its exact rational increment, one rounding each.
    """

    def __init__(self, n: NTuple, prec: int):
        self.n = n
        self.prec = prec
        self.pairs = [(e, r) for e, rs in zip(n.entries, n.residues) for r in rs]
        self.den_const = math.prod(e ** p for e, p in zip(n.entries, n.phi_values))
        self.log_c = Interval.from_value(n.c_constant, prec).log()
        self.m = 0
        self.t = Interval.from_value(1, prec)
        self.h = Interval.from_value(0, prec)
        self.s = -self.log_c
        self.f = Interval.from_value(1, prec)

    def advance_to(self, m_last: int) -> None:
        prec = self.prec
        big_phi = self.n.phi_total
        while self.m < m_last:
            m = self.m
            num = math.prod(e * m + r for e, r in self.pairs)
            den = self.den_const * (m + 1) ** big_phi
            self.t = self.t.scale_by_int(num, den)
            step = sum((Fraction(e, e * m + r) for e, r in self.pairs), Fraction(0)) - Fraction(big_phi, m + 1)
            self.h = self.h + Interval.from_value(step, prec)
            d = self.h - self.log_c
            if not d.certainly_lt(0):
                raise ArithmeticError(f"H({m + 1}) - log C not certified negative")
            self.s = self.s + self.t * d
            self.f = self.f + self.t
            self.m = m + 1

    def s_enclosure(self) -> Interval:
        tail = s_tail_bound(self.n, self.m, self.prec)
        return Interval((self.s - tail).lo, self.s.hi, self.prec)

    def f_enclosure(self) -> Interval:
        tail = f_tail_bound(self.n, self.m, self.prec)
        return Interval(self.f.lo, (self.f + tail).hi, self.prec)


def _terms_for(bound_at, target: float, budget: int) -> int:
    """Smallest ``m_last`` (doubling search, capped by ``budget``) with tail ``<= target``."""
    m = 8
    while True:
        if float(bound_at(m).upper) <= target:
            # bisect back down to the first admissible value
            lo, hi = max(2, m // 2), m
            while lo < hi:
                mid = (lo + hi) // 2
                if float(bound_at(mid).upper) <= target:
                    hi = mid
                else:
                    lo = mid + 1
            return lo
        if m >= budget:
            raise TailNotConvergent(f"tail bound above {target:g} even after {budget} terms")
        m = min(2 * m, budget)


def s_value(n: NTuple, prec: int = 256, budget: int = DEFAULT_BUDGET,
            target_radius: float = None) -> Interval:
    """Enclosure of ``S``; strictly negative.

    Without ``target_radius`` the whole budget is summed.  With it, only as
    many terms as the tail bound needs are used, and TailNotConvergent is
    raised if that exceeds the budget.
    """
    wp = prec + GUARD_BITS
    if target_radius is None:
        m_last = budget
    else:
        m_last = _terms_for(lambda m: s_tail_bound(n, m, wp), target_radius, budget)
    sums = _CriticalSums(n, wp)
    sums.advance_to(m_last)
    return sums.s_enclosure()


def f_at_c(n: NTuple, prec: int = 256, budget: int = DEFAULT_BUDGET) -> Optional[Interval]:
    """Enclosure of ``F(1/C)``, or ``None`` when the series diverges (``Phi <= 2``)."""
    if n.phi_total <= 2:
        return None
    sums = _CriticalSums(n, prec + GUARD_BITS)
    sums.advance_to(budget)
    return sums.f_enclosure()


def _qc_from(sums: _CriticalSums) -> Interval:
    return (sums.s_enclosure() / sums.f_enclosure()).exp()


def qc_value(n: NTuple, prec: int = 256, budget: int = DEFAULT_BUDGET,
             target_radius: float = None) -> Interval:
    """Enclosure of ``q_N(1/C) = exp(S / F(1/C))``; exactly 1 when ``Phi <= 2``."""
    if n.phi_total <= 2:
        return Interval.from_value(1, prec)
    wp = prec + GUARD_BITS
    sums = _CriticalSums(n, wp)
    if target_radius is None:
        sums.advance_to(budget)
        return _qc_from(sums)
    m = 64
    while True:
        sums.advance_to(m)
        qc = _qc_from(sums)
        if float(qc.radius) <= target_radius:
            return qc
        if m >= budget:
            raise TailNotConvergent(f"q(1/C) radius {float(qc.radius):.3g} after {budget} terms")
        m = min(2 * m, budget)


def critical_values(n: NTuple, prec: int = 256, budget: int = DEFAULT_BUDGET) -> CriticalValues:
    wp = prec + GUARD_BITS
    sums = _CriticalSums(n, wp)
    sums.advance_to(budget)
    s = sums.s_enclosure()
    if n.phi_total <= 2:
        f = None
        qc = Interval.from_value(1, prec)
    else:
        f = sums.f_enclosure()
        qc = (s / f).exp()
    return CriticalValues(n=n, rho=rho_value(n, prec), s_value=s, f_at_c=f, qc=qc, terms_used=budget)


def check_critical_inequality(n: NTuple, prec: int = 256, budget: int = DEFAULT_BUDGET,
                              checkpoints=DEFAULT_CHECKPOINTS) -> CheckReport:
    """Compare ``rho`` with ``q_N(1/C)``.

    Expected: ``rho > qc`` for ``Phi >= 3`` and ``rho <= qc = 1`` otherwise
    (equality exactly when ``M = 2``).  Terms are added at the checkpoints
    until the enclosures separate.
    """
    t0 = time.perf_counter()
    rho = rho_value(n, prec)
    params = {"n": n.label, "phi": n.phi_total, "precision_bits": prec}
    if n.phi_total <= 2:
        qc = Interval.from_value(1, prec)
        params.update(expected="rho<=qc", rho=str(rho), qc="1", terms=0)
        if rho.is_exact() and rho.contains(1):
            params["relation"] = "rho=qc"
            return CheckReport("critical", params, PASS, [], elapsed_ms(t0))
        if rho.certainly_lt(qc):
            params["relation"] = "rho<qc"
            return CheckReport("critical", params, PASS, [], elapsed_ms(t0))
        outcome = FAIL if rho.certainly_gt(qc) else INDETERMINATE
        return CheckReport("critical", params, outcome, [(0, f"rho={rho}")], elapsed_ms(t0))

    sums = _CriticalSums(n, prec + GUARD_BITS)
    params["expected"] = "rho>qc"
    qc = None
    for m in sorted(set(min(c, budget) for c in checkpoints) | {budget}):
        sums.advance_to(m)
        qc = _qc_from(sums)
        if rho.certainly_gt(qc) or rho.certainly_le(qc):
            break
    params.update(rho=str(rho), qc=str(qc), terms=sums.m)
    if rho.certainly_gt(qc):
        params["relation"] = "rho>qc"
        return CheckReport("critical", params, PASS, [], elapsed_ms(t0))
    if rho.certainly_le(qc):
        params["relation"] = "rho<=qc"
        return CheckReport("critical", params, FAIL, [(sums.m, f"qc={qc}")], elapsed_ms(t0))
    params["relation"] = "overlap"
    return CheckReport("critical", params, INDETERMINATE,
                       [(sums.m, "enclosures overlap within the term budget")], elapsed_ms(t0))


# ---------------------------------------------------------------------------
# the totient criterion
# ---------------------------------------------------------------------------

def zeta_interval(s: Fraction, prec: int = 256, cutoff: int = 10, terms: int = 8) -> Interval:
    """Euler-Maclaurin enclosure of ``zeta(s)`` for real ``s > 1``.

    For real ``s`` the remainder after ``terms`` Bernoulli corrections is
    bounded in absolute value by the first omitted correction.
    """
    s = Fraction(s)
    if s <= 1:
        raise ValueError("zeta_interval needs s > 1")
    wp = prec + GUARD_BITS

    def npow(k: int, e: Fraction) -> Interval:
        # k ** (-e)
        return Interval.from_value(k, wp).rpow(-e)

    total = Interval.from_value(0, wp)
    for k in range(1, cutoff):
        total = total + npow(k, s)
    total = total + npow(cutoff, s - 1) / Interval.from_value(s - 1, wp)
    total = total + npow(cutoff, s) / 2

    def correction(j: int) -> Interval:
        p, q = bernfrac(2 * j)
        rising = Fraction(1)
        for i in range(2 * j - 1):
            rising *= s + i
        coeff = Fraction(int(p), int(q)) / math.factorial(2 * j) * rising
        return Interval.from_value(coeff, wp) * npow(cutoff, s + 2 * j - 1)

    for j in range(1, terms + 1):
        total = total + correction(j)
    return total + _symmetric(correction(terms + 1))


def _symmetric(x: Interval) -> Interval:
    """``[-a, a]`` with ``a = max |x|``."""
    a = max(abs(x.upper), abs(x.lower))
    return Interval((-a)._mpf_, a._mpf_, x.prec)


def c_k(k: int, prec: int = 256) -> Interval:
    """``1 + 2^-K + (e^(7/300)/sqrt(pi))^K zeta(K/2)`` with ``K = max(4, k)``."""
    big_k = max(4, k)
    base = Interval.from_value(Fraction(7, 300), prec).exp() / Interval.pi(prec).sqrt()
    return (1 + Interval.from_value(Fraction(1, 2 ** big_k), prec)
            + base ** big_k * zeta_interval(Fraction(big_k, 2), prec))


def phibar(n: int, prec: int = 256) -> Interval:
    """Lower bound ``max(1, n / (e^gamma log log n + 3 / log log n))`` for the totient."""
    if n < 2:
        raise ValueError("phibar needs n >= 2")
    ll = Interval.from_value(n, prec).log().log()
    denom = Interval.euler_gamma(prec).exp() * ll + 3 / ll
    return (Interval.from_value(n, prec) / denom).max_with(1)


def u8_bound(n: NTuple, prec: int = 256, terms: int = U8_TERMS) -> Interval:
    """Upper bound for ``q_N(1/C)`` from ``terms + 1`` exact summands and the F tail bound."""
    if n.phi_total < 3:
        raise ValueError("the truncated bound needs Phi >= 3")
    sums = _CriticalSums(n, prec + GUARD_BITS)
    sums.advance_to(terms)
    s = Fraction(n.phi_total, 2)
    k = stirling_constant(n.phi_total, sums.prec)
    tail = k / Interval.from_value(s - 1, sums.prec) * Interval.from_value(terms - 1, sums.prec).rpow(1 - s)
    return (sums.s / (sums.f + tail)).exp()


def krit_check(n: NTuple, prec: int = 256) -> KritReport:
    if n.phi_total < 4:
        raise ValueError("the criterion is stated for Phi >= 4")
    phis = [phibar(e, prec) for e in n.entries]
    lhs = Interval.from_value(0, prec)
    for e, pb in zip(n.entries, phis):
        lhs = lhs + pb * Interval.from_value(e, prec).log()
    ck = c_k(n.k, prec)
    rhs = ck * n.m_max
    holds = lhs.certainly_ge(rhs)
    rho = rho_value(n, prec)
    fallback = None
    verified = holds
    if not holds:
        fallback = u8_bound(n, prec)
        verified = fallback.certainly_lt(rho)
    return KritReport(n=n, phibar_values=phis, c_k=ck, lhs=lhs, rhs=rhs, krit_holds=holds,
                      fallback_u8=fallback, rho=rho, inequality_verified=verified)


def krit_report_to_check(rep: KritReport, t0: float) -> CheckReport:
    params = {"n": rep.n.label, "krit_holds": rep.krit_holds, "lhs": str(rep.lhs), "rhs": str(rep.rhs),
              "c_k": str(rep.c_k), "rho": str(rep.rho),
              "fallback_u8": None if rep.fallback_u8 is None else str(rep.fallback_u8)}
    if rep.inequality_verified:
        return CheckReport("krit", params, PASS, [], elapsed_ms(t0))
    return CheckReport("krit", params, FAIL, [(0, "neither the criterion nor the fallback bound holds")],
                       elapsed_ms(t0))


def k15_minimum(m_max: int = 10 ** 6, prec: int = 128):
    """``min_{2 <= M <= m_max} (phibar(M) log M - c_15 M)`` in double precision.

    Returns ``(minimum, argmin)``.
    """
    c15 = float(c_k(15, prec).upper)
    gamma_exp = math.exp(0.57721566490153286)
    m = np.arange(2, m_max + 1, dtype=np.float64)
    logm = np.log(m)
    ll = np.log(logm)
    pb = np.maximum(1.0, m / (gamma_exp * ll + 3.0 / ll))
    vals = pb * logm - c15 * m
    i = int(np.argmin(vals))
    return float(vals[i]), int(m[i])


def stirling_bound_check(n: NTuple, m_max: int = 200, prec: int = 128) -> CheckReport:
    """``B(m) C^-m <= K (m-1)^(-Phi/2)`` for ``2 <= m <= m_max`` and ``B(1) <= C 2^-Phi``."""
    t0 = time.perf_counter()
    bs = b_sequence(n, m_max)
    c = n.c_constant
    witnesses = []
    undecided = []
    if m_max >= 1 and bs[1] * 2 ** n.phi_total > c:
        witnesses.append((1, f"B(1)={bs[1]} > C 2^-Phi"))
    k = stirling_constant(n.phi_total, prec)
    half_phi = Fraction(-n.phi_total, 2)
    for m in range(2, m_max + 1):
        lhs = Interval.from_value(Fraction(bs[m], c ** m), prec)
        rhs = k * Interval.from_value(m - 1, prec).rpow(half_phi)
        if lhs.certainly_le(rhs):
            continue
        if lhs.certainly_gt(rhs):
            witnesses.append((m, f"{lhs} > {rhs}"))
            break
        undecided.append((m, "enclosures overlap"))
    params = {"n": n.label, "m_max": m_max, "precision_bits": prec}
    if witnesses:
        return CheckReport("stirling", params, FAIL, witnesses, elapsed_ms(t0))
    if undecided:
        return CheckReport("stirling", params, INDETERMINATE, undecided[:5], elapsed_ms(t0))
    return CheckReport("stirling", params, PASS, [], elapsed_ms(t0))


# ---------------------------------------------------------------------------
# radius of convergence and asymptotic fits (heuristic)
# ---------------------------------------------------------------------------

@dataclass
class RatioFit:
    radius: float
    error: float
    slope: float
    residual: float
    points: int
    method: str


def _float_ratios(s: TruncatedSeries, start: int):
    cs = s.coeffs
    ms, rs = [], []
    for m in range(max(start, 1), s.order + 1):
        a, b = cs[m], cs[m - 1]
        if a and b:
            ms.append(m)
            rs.append(float(Fraction(a) / Fraction(b)))
    return np.array(ms, dtype=np.float64), np.array(rs, dtype=np.float64)


def _domb_sykes(ms, rs) -> RatioFit:
    # c_m / c_{m-1} = alpha + beta / m
    design = np.column_stack([np.ones_like(ms), 1.0 / ms])
    coef, _, _, _ = np.linalg.lstsq(design, rs, rcond=None)
    alpha, beta = coef
    resid = rs - design @ coef
    rms = float(np.sqrt(np.mean(resid ** 2)))
    dof = max(1, len(ms) - 2)
    cov = np.linalg.inv(design.T @ design) * float(resid @ resid) / dof
    sigma_alpha = float(np.sqrt(max(cov[0, 0], 0.0)))
    radius = 1.0 / abs(alpha)
    err = sigma_alpha / alpha ** 2
    return RatioFit(radius, max(err, rms * radius ** 2), float(beta / alpha), rms, len(ms), "domb_sykes")


def radius_fit(s: TruncatedSeries, method: str = "domb_sykes", fraction: float = 0.5) -> RatioFit:
    nonzero = sum(1 for c in s.coeffs[1:] if c)
    if nonzero < 20:
        raise InsufficientCoefficients(f"only {nonzero} nonzero coefficients")
    start = int(s.order * (1 - fraction))
    ms, rs = _float_ratios(s, start)
    if len(ms) < 10:
        raise InsufficientCoefficients("too few consecutive nonzero coefficients in the fit window")
    if method == "domb_sykes":
        fit = _domb_sykes(ms, rs)
        # the spread between the half window and the last quarter shows the fit bias
        k = len(ms) // 2
        if k >= 10:
            other = _domb_sykes(ms[k:], rs[k:])
            fit.error = max(fit.error, abs(other.radius - fit.radius))
        return fit
    if method == "ratio":
        # |c_{m-1}/c_m| = R + a/m, one Richardson step removes the 1/m term
        r = 1.0 / np.abs(rs)
        rich = ms[1:] * r[1:] - ms[:-1] * r[:-1]
        radius = float(rich[-1])
        err = float(abs(rich[-1] - rich[-2])) if len(rich) > 1 else float("inf")
        return RatioFit(radius, err, 0.0, err, len(ms), method)
    raise ValueError(f"unknown method {method!r}")


def radius_estimate(s: TruncatedSeries, method: str = "domb_sykes") -> Interval:
    """Heuristic radius of convergence as a non-certified interval."""
    fit = radius_fit(s, method)
    return Interval.estimate(fit.radius, fit.error)


def _weight(phi_total: int, m: int) -> float:
    if phi_total == 1:
        return m ** 1.5
    if phi_total == 2:
        return m * math.log(m) ** 2
    return m ** (phi_total / 2)


def normalized_coefficients(q: TruncatedSeries, n: NTuple, ms) -> List[float]:
    c = n.c_constant
    return [float(Fraction(q[m], c ** m)) * _weight(n.phi_total, m) for m in ms]


def b_constant(n: NTuple) -> float:
    """``prod 1/Gamma(r/N)`` over all residues."""
    return math.prod(1.0 / math.gamma(float(a)) for a in n.alphas)


def b_constant_fit(n: NTuple, m_max: int = 400) -> float:
    """Extrapolated limit of ``B(m) C^-m m^(Phi/2)`` from a fit ``K + a/m + b/m^2``."""
    bs = b_sequence(n, m_max)
    c = n.c_constant
    ms = np.arange(m_max // 2, m_max + 1, dtype=np.float64)
    vals = np.array([float(Fraction(bs[int(m)], c ** int(m))) * m ** (n.phi_total / 2) for m in ms])
    design = np.column_stack([np.ones_like(ms), 1 / ms, 1 / ms ** 2])
    coef, _, _, _ = np.linalg.lstsq(design, vals, rcond=None)
    return float(coef[0])


def asymptotic_fit(d, tol: float = 0.05, const_tol: float = 0.02) -> CheckReport:
    """Stabilisation of the normalised canonical-coordinate coefficients.

    ``u_m = q_m C^-m w(m)`` with ``w = m^(3/2)``, ``m log^2 m`` or
    ``m^(Phi/2)`` by case; passes when ``|u_M / u_(M/2) - 1| < tol``.  For
    ``Phi = 1`` the limit must also be within ``const_tol`` of ``1/sqrt(pi)``.
    """
    t0 = time.perf_counter()
    if d.order < 100:
        raise ValueError("asymptotic fits need order >= 100")
    n = d.n
    m_top = d.order
    u_half, u_top = normalized_coefficients(d.q_series, n, [m_top // 2, m_top])
    drift = abs(u_top / u_half - 1)
    b_fit = b_constant_fit(n, m_top)
    b_ref = b_constant(n)
    params = {"n": n.label, "order": m_top, "u_half": u_half, "u_top": u_top, "drift": drift,
              "b_constant_fit": b_fit, "b_constant": b_ref}
    witnesses = []
    slow = n.phi_total == 2
    if drift >= tol:
        note = " (corrections decay like 1/log m)" if slow else ""
        witnesses.append((m_top, f"drift {drift:.4g} >= {tol}{note}"))
    if n.phi_total == 1:
        target = 1 / math.sqrt(math.pi)
        params["constant_error"] = abs(u_top / target - 1)
        if abs(u_top / target - 1) >= const_tol:
            witnesses.append((m_top, f"u = {u_top:.6g} vs 1/sqrt(pi)"))
    if abs(b_fit - b_ref) > 1e-4 * max(1.0, abs(b_ref)):
        witnesses.append((m_top, f"B constant {b_fit:.8g} vs {b_ref:.8g}"))
    if not witnesses:
        return CheckReport("asymptotic", params, PASS, [], elapsed_ms(t0))
    # with Phi = 2 a drift at this order says nothing either way
    only_drift = slow and len(witnesses) == 1 and drift >= tol
    return CheckReport("asymptotic", params, INDETERMINATE if only_drift else FAIL, witnesses,
                       elapsed_ms(t0))
