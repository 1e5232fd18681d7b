"""q-expansions of classical modular objects and exact identity checks.

Each identity relating a mirror map ``z_N(q)`` to Eisenstein series, eta
quotients or theta functions is stored with both sides multiplied through by
every denominator, so the check is an equality of two ordinary truncated
power series with rational coefficients.  The mirror map itself always comes
from :func:`mirrormaps.mirrormap.build`; nothing here feeds modular data back
into its construction.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from .mirrormap import MirrorData, build, f_series
from .numbers import NTuple, make_ntuple, sigma_k
from .report import FAIL, PASS, CheckReport, elapsed_ms
from .series import (
    TruncatedSeries,
    alternate,
    compose,
    dilate,
    eta_product,
    linear_factor_product,
    mul,
    power,
    rescale,
    sqrt_series,
)


class UnknownIdentity(KeyError):
    pass


class PoleInParameters(ValueError):
    pass


S = TruncatedSeries

CUBE_DISCRIMINANT_NOTE = (
    "Q^3 - R^2 = 1728 q prod(1 - q^n)^24; writing eta^24 = E4^3 - E6^2 drops the factor 1728."
)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def _divisor_series(const: int, scale: int, k: int, order: int) -> S:
    return S([const] + [scale * sigma_k(n, k) for n in range(1, order + 1)], order)


def eisenstein_q(order: int) -> S:
    """``1 + 240 sum sigma_3(n) q^n``."""
    return _divisor_series(1, 240, 3, order)


def eisenstein_r(order: int) -> S:
    """``1 - 504 sum sigma_5(n) q^n``."""
    return _divisor_series(1, -504, 5, order)


def discriminant(order: int) -> S:
    """``Q^3 - R^2``, checked against ``1728 q prod(1-q^n)^24``."""
    q = eisenstein_q(order)
    r = eisenstein_r(order)
    d = power(q, 3) - power(r, 2)
    expected = 1728 * _shift(eta_product([(1, 24)], order))
    if d != expected:
        raise ArithmeticError("Q^3 - R^2 disagrees with 1728 q prod(1-q^n)^24")
    return d


def _shift(s: S, k: int = 1) -> S:
    n = s.order
    return S._raw(((0,) * k + s.coeffs)[: n + 1])


def theta3_4(order: int) -> S:
    """``theta_3^4 = prod (1-q^2j)^4 (1+q^(2j-1))^8``."""
    factors = []
    for j in range(1, order // 2 + 1):
        factors.append((2 * j, -1, 4))
    for j in range(1, (order + 1) // 2 + 1):
        factors.append((2 * j - 1, 1, 8))
    return linear_factor_product(factors, order)


def theta2_4(order: int) -> S:
    """``theta_2^4 / (16 q) = prod (1-q^2j)^4 (1+q^2j)^8``."""
    factors = []
    for j in range(1, order // 2 + 1):
        factors.append((2 * j, -1, 4))
        factors.append((2 * j, 1, 8))
    return linear_factor_product(factors, order)


def theta3_4_sum(order: int) -> S:
    """``(sum_{n in Z} q^(n^2))^4`` from the plain lattice sum."""
    cs = [0] * (order + 1)
    n = 0
    while n * n <= order:
        cs[n * n] += 1 if n == 0 else 2
        n += 1
    return power(S(cs, order), 4)


def theta2_4_sum(order: int) -> S:
    """``(sum_{n >= 0} q^(n(n+1)))^4``."""
    cs = [0] * (order + 1)
    n = 0
    while n * (n + 1) <= order:
        cs[n * (n + 1)] += 1
        n += 1
    return power(S(cs, order), 4)


def level_series(which: str, order: int) -> S:
    """``Q2, R2, Q3, R3``: averages of ``Q`` or ``R`` with their dilates."""
    table = {
        "Q2": (eisenstein_q, 2, 4, 5),
        "R2": (eisenstein_r, 2, 8, 9),
        "Q3": (eisenstein_q, 3, 9, 10),
        "R3": (eisenstein_r, 3, 27, 28),
    }
    if which not in table:
        raise ValueError(f"unknown level series {which!r}")
    base, k, weight, total = table[which]
    b = base(order)
    return (b + weight * dilate(b, k)) / total


def gauss_2f1(a, b, c, order: int) -> S:
    """``sum (a)_k (b)_k / ((c)_k k!) z^k``."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if c.denominator == 1 and c <= 0:
        raise PoleInParameters(f"c = {c} is a nonpositive integer")
    cs = [Fraction(1)]
    for k in range(order):
        cs.append(cs[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return S(cs, order)


# ---------------------------------------------------------------------------
# identity registry
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def mirror_data(label: str, order: int) -> MirrorData:
    return build(NTuple.parse(label), order)


def mirror_map(label: str, order: int) -> S:
    return mirror_data(label, order).z_series


class _Ctx:
    """Lazily computed objects shared by the identities of one check."""

    def __init__(self, label: str, order: int):
        self.label = label
        self.order = order
        self._cache: Dict[str, S] = {}

    def get(self, key: str, fn: Callable[[], S]) -> S:
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def z(self) -> S:
        return self.get("z", lambda: mirror_map(self.label, self.order))

    def z_of(self, label: str) -> S:
        return self.get("z:" + label, lambda: mirror_map(label, self.order))

    @property
    def q(self) -> S:
        return S.variable(self.order)

    @property
    def one(self) -> S:
        return S.one(self.order)

    @property
    def Q(self) -> S:
        return self.get("Q", lambda: eisenstein_q(self.order))

    @property
    def R(self) -> S:
        return self.get("R", lambda: eisenstein_r(self.order))

    @property
    def Q3(self) -> S:
        return self.get("Q^3", lambda: power(self.Q, 3))

    @property
    def D(self) -> S:
        return self.get("D", lambda: discriminant(self.order))

    def level(self, which: str) -> S:
        return self.get(which, lambda: level_series(which, self.order))

    def eta(self, *spec: Tuple[int, int]) -> S:
        return self.get(f"eta{spec}", lambda: eta_product(list(spec), self.order))

    def poly(self, *cs) -> S:
        """``cs[0] + cs[1] z + cs[2] z^2 + ...`` composed with this case's mirror map."""
        out = S.constant(cs[0], self.order)
        zp = self.one
        for c in cs[1:]:
            zp = mul(zp, self.z)
            out = out + c * zp
        return out


Side = Callable[[_Ctx], S]


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Side
    rhs: Side
    cleared_form: str
    note: str = ""


@dataclass(frozen=True)
class ModularCase:
    n: NTuple
    identity_set: Tuple[Identity, ...]
    notes: Tuple[str, ...] = ()

    def identity(self, name: str) -> Identity:
        for ident in self.identity_set:
            if ident.name == name:
                return ident
        raise UnknownIdentity(f"no identity {name!r} for case {self.n.label}")

    @property
    def names(self) -> List[str]:
        return [i.name for i in self.identity_set]


def _j_identity(name: str, num: Tuple[int, ...], den: Tuple[int, ...], den_power: int, form: str) -> Identity:
    """``1728 Q^3 z p(z)^k = s(z)^3 (Q^3 - R^2)`` from ``1728 J = s(z)^3 / (z p(z)^k)``."""

    def lhs(c: _Ctx) -> S:
        return 1728 * mul(mul(c.Q3, c.z), power(c.poly(*den), den_power))

    def rhs(c: _Ctx) -> S:
        return mul(power(c.poly(*num), 3), c.D)

    return Identity(name, lhs, rhs, form, CUBE_DISCRIMINANT_NOTE)


def _sqrt_route(c: _Ctx) -> S:
    q3 = c.level("Q3")
    return mul(mul(c.poly(1, -54), q3), sqrt_series(q3))


_REGISTRY: Dict[str, ModularCase] = {}


def _register(label: str, *identities: Identity, notes: Tuple[str, ...] = ()):
    _REGISTRY[label] = ModularCase(make_ntuple(int(x) for x in label.split(",")), tuple(identities), notes)


_register(
    "2",
    Identity("closed", lambda c: mul(c.z, power(c.one + c.q, 2)), lambda c: c.q, "z (1+q)^2 = q"),
)
_register(
    "3",
    Identity("eta",
             lambda c: mul(c.z, 27 * _shift(c.eta((3, 12))) + c.eta((1, 12))),
             lambda c: _shift(c.eta((3, 12))),
             "z (27 q P(q^3)^12 + P(q)^12) = q P(q^3)^12,  P(q) = prod(1-q^n)"),
    _j_identity("j", (1, 216), (1, -27), 3, "1728 Q^3 z (1-27z)^3 = (1+216z)^3 (Q^3 - R^2)"),
    Identity("level-sqrt", _sqrt_route, lambda c: c.level("R3"), "(1-54z) Q3 sqrt(Q3) = R3"),
    Identity("level-squared",
             lambda c: mul(power(c.poly(1, -54), 2), power(c.level("Q3"), 3)),
             lambda c: power(c.level("R3"), 2),
             "(1-54z)^2 Q3^3 = R3^2"),
)
_register(
    "4",
    Identity("eta",
             lambda c: mul(c.z, 64 * _shift(c.eta((2, 24))) + c.eta((1, 24))),
             lambda c: _shift(c.eta((2, 24))),
             "z (64 q P(q^2)^24 + P(q)^24) = q P(q^2)^24"),
    _j_identity("j", (1, 192), (1, -64), 2, "1728 Q^3 z (1-64z)^2 = (1+192z)^3 (Q^3 - R^2)"),
    Identity("theta",
             lambda c: mul(c.z, power(16 * _shift(c.get("T", lambda: theta2_4(c.order)))
                                      + c.get("U", lambda: theta3_4(c.order)), 2)),
             lambda c: _shift(mul(c.get("T", lambda: theta2_4(c.order)),
                                  c.get("U", lambda: theta3_4(c.order)))),
             "z (16 q T + U)^2 = q T U,  T = theta2^4/(16q), U = theta3^4"),
)
_register(
    "6",
    _j_identity("j", (1,), (1, -432), 1, "1728 Q^3 z (1-432z) = Q^3 - R^2"),
)
_register(
    "2,2",
    Identity("theta",
             lambda c: mul(c.z, theta3_4(c.order)),
             lambda c: _shift(theta2_4(c.order)),
             "z theta3^4 = q theta2^4/(16q)"),
    Identity("eta",
             lambda c: mul(c.z, alternate(c.eta((1, 8)))),
             lambda c: _shift(c.eta((4, 8))),
             "z prod(1-(-q)^n)^8 = q prod(1-q^4n)^8"),
    _j_identity("j", (1, 224, 256), (1, -16), 4, "1728 Q^3 z (1-16z)^4 = (1+224z+256z^2)^3 (Q^3 - R^2)"),
)
_register(
    "2,3",
    Identity("level",
             lambda c: 108 * mul(power(c.level("Q3"), 3), c.z),
             lambda c: power(c.level("Q3"), 3) - power(c.level("R3"), 2),
             "108 Q3^3 z = Q3^3 - R3^2"),
)
_register(
    "2,4",
    Identity("level",
             lambda c: 256 * mul(power(c.level("Q2"), 3), c.z),
             lambda c: power(c.level("Q2"), 3) - power(c.level("R2"), 2),
             "256 Q2^3 z = Q2^3 - R2^2"),
    Identity("quad",
             lambda c: c.z,
             lambda c: c.z_of("4") - 64 * power(c.z_of("4"), 2),
             "z_(2,4) = z_(4) - 64 z_(4)^2"),
)
_register(
    "2,6",
    _j_identity("j", (1,), (1,), 1, "1728 Q^3 z = Q^3 - R^2"),
)
_register(
    "2,2,2",
    Identity("quad",
             lambda c: c.z,
             lambda c: c.z_of("2,2") - 16 * power(c.z_of("2,2"), 2),
             "z_(2,2,2) = z_(2,2) - 16 z_(2,2)^2"),
    Identity("eta",
             lambda c: mul(c.z, alternate(c.eta((1, 24)))),
             lambda c: _shift(c.eta((2, 24))),
             "z prod(1-(-q)^n)^24 = q prod(1-q^2n)^24"),
)

CLAUSEN_PARAMETERS = {
    "2,3": (Fraction(1, 3), Fraction(1, 6)),
    "2,4": (Fraction(1, 8), Fraction(3, 8)),
    "2,6": (Fraction(1, 12), Fraction(5, 12)),
    "2,2,2": (Fraction(1, 4), Fraction(1, 4)),
}

QUADRATIC_PARAMETERS = ((Fraction(1, 8), Fraction(3, 8)), (Fraction(1, 4), Fraction(1, 4)))


def case_labels() -> List[str]:
    return list(_REGISTRY)


def get_case(label) -> ModularCase:
    key = label.label if isinstance(label, NTuple) else NTuple.parse(str(label)).label
    if key not in _REGISTRY:
        raise UnknownIdentity(f"no modular case registered for ({key})")
    return _REGISTRY[key]


def _compare(name: str, params: dict, lhs: S, rhs: S, t0: float) -> CheckReport:
    if lhs == rhs:
        return CheckReport(name, params, PASS, [], elapsed_ms(t0))
    i = next(k for k in range(lhs.order + 1) if lhs[k] != rhs[k])
    return CheckReport(name, params, FAIL, [(i, f"{lhs[i]} != {rhs[i]}")], elapsed_ms(t0))


def verify_identity(case, name: str, order: int) -> CheckReport:
    t0 = time.perf_counter()
    mc = case if isinstance(case, ModularCase) else get_case(case)
    ident = mc.identity(name)
    ctx = _Ctx(mc.n.label, order)
    params = {"case": mc.n.label, "identity": name, "order": order, "cleared_form": ident.cleared_form}
    return _compare("modular-identity", params, ident.lhs(ctx), ident.rhs(ctx), t0)


def verify_case(case, order: int) -> List[CheckReport]:
    mc = case if isinstance(case, ModularCase) else get_case(case)
    return [verify_identity(mc, name, order) for name in mc.names]


def check_clausen(case, order: int) -> CheckReport:
    """``F_N = 2F1[alpha, beta; 1; C z]^2`` for the four product cases."""
    t0 = time.perf_counter()
    n = case.n if isinstance(case, ModularCase) else NTuple.parse(str(case))
    if n.label not in CLAUSEN_PARAMETERS:
        raise UnknownIdentity(f"no Clausen square registered for ({n.label})")
    a, b = CLAUSEN_PARAMETERS[n.label]
    inner = rescale(gauss_2f1(a, b, 1, order), n.c_constant)
    params = {"case": n.label, "order": order, "alpha": str(a), "beta": str(b)}
    return _compare("clausen", params, f_series(n, order), power(inner, 2), t0)


def check_quadratic_transform(order: int, params=QUADRATIC_PARAMETERS) -> CheckReport:
    """``2F1[a,b; 1/2+a+b; z] = 2F1[2a,2b; 1/2+a+b; (1 - sqrt(1-z))/2]``."""
    t0 = time.perf_counter()
    if order < 2:
        raise ValueError("order must be at least 2")
    one_minus_z = S([1, -1], order)
    inner = (1 - sqrt_series(one_minus_z)) / 2
    witnesses = []
    for a, b in params:
        c = Fraction(1, 2) + a + b
        lhs = gauss_2f1(a, b, c, order)
        rhs = compose(gauss_2f1(2 * a, 2 * b, c, order), inner)
        if lhs != rhs:
            i = next(k for k in range(order + 1) if lhs[k] != rhs[k])
            witnesses.append((i, f"(a,b)=({a},{b}): {lhs[i]} != {rhs[i]}"))
    p = {"order": order, "instances": [f"{a},{b}" for a, b in params]}
    return CheckReport("quadratic-transform", p, FAIL if witnesses else PASS, witnesses, elapsed_ms(t0))


def check_theta_products(order: int) -> CheckReport:
    """Product and lattice-sum forms of ``theta_2^4`` and ``theta_3^4`` agree."""
    t0 = time.perf_counter()
    witnesses = []
    for name, prod_fn, sum_fn in (("theta2", theta2_4, theta2_4_sum), ("theta3", theta3_4, theta3_4_sum)):
        a, b = prod_fn(order), sum_fn(order)
        if a != b:
            i = next(k for k in range(order + 1) if a[k] != b[k])
            witnesses.append((i, name))
    return CheckReport("theta-products", {"order": order}, FAIL if witnesses else PASS, witnesses,
                       elapsed_ms(t0))
