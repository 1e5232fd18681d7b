"""Truncated power series with exact rational coefficients.

A :class:`TruncatedSeries` of order ``M`` holds the coefficients of
``z^0 .. z^M``.  Coefficients are Python ``int`` whenever they are integral
and :class:`fractions.Fraction` otherwise, so integer series (the common case
for canonical coordinates, mirror maps and q-expansions) never pay for
rational normalisation.

Internally the heavy operations work on a *scaled* form: a list of integer
numerators together with one common denominator.  Products, inverses,
exponentials and square roots are computed on those integers and converted
back at the end, which keeps the cost at one gcd per coefficient instead of
one gcd per multiplication.

Two series can only be combined when their orders agree; a mismatch raises
:class:`OrderMismatch` instead of silently truncating.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple, Union

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = None

Coeff = Union[int, Fraction]


class SeriesError(ValueError):
    pass


class OrderMismatch(SeriesError):
    pass


class NonUnitDivisor(SeriesError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(SeriesError):
    pass


class ConstantTermNotOne(SeriesError):
    pass


class InnerConstantNonzero(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


def _norm(c) -> Coeff:
    """Canonical coefficient: ``int`` if integral, else a reduced Fraction."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"series coefficients must be rational, got {type(c).__name__}")


def _ratio(num: int, den: int) -> Coeff:
    if den < 0:
        num, den = -num, -den
    if den == 1:
        return num
    q, r = divmod(num, den)
    if r == 0:
        return q
    return Fraction(num, den)


def _scale(coeffs: Sequence[Coeff]) -> Tuple[List[int], int]:
    """Common-denominator form ``(numerators, den)`` of a coefficient list."""
    den = 1
    for c in coeffs:
        if type(c) is not int:
            den = lcm(den, c.denominator)
    if den == 1:
        return list(coeffs), 1
    return [c * den if type(c) is int else c.numerator * (den // c.denominator) for c in coeffs], den


def _unscale(nums: Sequence[int], den: int) -> Tuple[Coeff, ...]:
    if den == 1:
        return tuple(nums)
    return tuple(_ratio(a, den) for a in nums)


_KRONECKER_MIN = 24


def _pack(a: Sequence[int], nbytes: int) -> int:
    """``sum a_i 2^(8 nbytes i)`` for signed ``a_i``."""
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _conv_kronecker(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    a = a[: n + 1]
    b = b[: n + 1]
    bound = max(abs(x) for x in a).bit_length() + max(abs(x) for x in b).bit_length()
    bits = bound + (n + 1).bit_length() + 2
    nbytes = (bits + 7) // 8
    width = 8 * nbytes
    prod_ = int(_mpz(_pack(a, nbytes)) * _mpz(_pack(b, nbytes)))
    # shift every digit into [0, 2^width) so the bytes can be cut apart
    half = 1 << (width - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * (n + 1), "little")
    raw = (prod_ + offset) & ((1 << (width * (n + 1))) - 1)
    data = raw.to_bytes(nbytes * (n + 1), "little")
    return [int.from_bytes(data[i * nbytes:(i + 1) * nbytes], "little") - half
            for i in range(n + 1)]


def _conv(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    """Integer Cauchy product truncated after index ``n``.

    Long dense products go through a single big-integer multiplication
    (Kronecker substitution) when GMP is available; short or sparse ones
    use the schoolbook double loop.
    """
    if _mpz is not None and n >= _KRONECKER_MIN and any(a) and any(b):
        nza = sum(1 for x in a[: n + 1] if x)
        nzb = sum(1 for x in b[: n + 1] if x)
        if min(nza, nzb) > 8:
            return _conv_kronecker(a, b, n)
    return _conv_schoolbook(a, b, n)


def _conv_schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    out = [0] * (n + 1)
    # iterate over the sparser operand
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    lb = min(len(b), n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


class _Accumulator:
    """Growing coefficient list kept over a single common denominator.

    Used by the recurrences (inverse, exp, sqrt) whose new coefficient
    depends on all previous ones.  When a value with a new denominator
    arrives, the stored numerators are rescaled once.
    """

    __slots__ = ("nums", "den")

    def __init__(self):
        self.nums: List[int] = []
        self.den = 1

    def push(self, num: int, den: int) -> None:
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        if self.den % den:
            new_den = lcm(self.den, den)
            f = new_den // self.den
            self.nums = [x * f for x in self.nums]
            self.den = new_den
        self.nums.append(num * (self.den // den))


class TruncatedSeries:
    """Immutable truncated power series ``c_0 + c_1 z + ... + c_M z^M``."""

    __slots__ = ("_coeffs", "_scaled")

    def __init__(self, coeffs: Iterable, order: int = None):
        cs = [_norm(c) for c in coeffs]
        if order is None:
            if not cs:
                raise SeriesError("cannot infer the order of an empty coefficient list")
            order = len(cs) - 1
        if order < 0:
            raise SeriesError("order must be nonnegative")
        if len(cs) < order + 1:
            cs.extend([0] * (order + 1 - len(cs)))
        self._coeffs: Tuple[Coeff, ...] = tuple(cs[: order + 1])
        self._scaled = None

    @classmethod
    def _raw(cls, coeffs: Tuple[Coeff, ...]) -> "TruncatedSeries":
        s = object.__new__(cls)
        s._coeffs = coeffs
        s._scaled = None
        return s

    @classmethod
    def _from_scaled(cls, nums: Sequence[int], den: int) -> "TruncatedSeries":
        s = cls._raw(_unscale(nums, den))
        return s

    # -- construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls._raw((0,) * (order + 1))

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls._raw((_norm(value),) + (0,) * order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The series ``z`` (zero if ``order == 0``)."""
        if order == 0:
            return cls.zero(0)
        return cls._raw((0, 1) + (0,) * (order - 1))

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if power <= order:
            cs[power] = _norm(coeff)
        return cls._raw(tuple(cs))

    # -- basic protocol -------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[Coeff, ...]:
        return self._coeffs

    def fractions(self) -> List[Fraction]:
        return [Fraction(c) for c in self._coeffs]

    def scaled(self) -> Tuple[List[int], int]:
        if self._scaled is None:
            self._scaled = _scale(self._coeffs)
        return self._scaled

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, idx):
        return self._coeffs[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:8])
        more = ", ..." if len(self._coeffs) > 8 else ""
        return f"TruncatedSeries([{head}{more}], order={self.order})"

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order + 1`` for zero)."""
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return len(self._coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot truncate order {self.order} up to {order}")
        return TruncatedSeries._raw(self._coeffs[: order + 1])

    def extend(self, order: int) -> "TruncatedSeries":
        """Pad with zero coefficients (the caller vouches that they are known)."""
        if order < self.order:
            raise OrderMismatch(f"cannot extend order {self.order} down to {order}")
        return TruncatedSeries._raw(self._coeffs + (0,) * (order - self.order))

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        if isinstance(other, Rational):
            return TruncatedSeries._raw((_norm(self._coeffs[0] + other),) + self._coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return sub(self, other)
        if isinstance(other, Rational):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, Rational):
            return scalar_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return scalar_mul(self, Fraction(1) / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return scalar_mul(inverse(self), other)
        return NotImplemented

    def __pow__(self, e: int):
        return power(self, e)

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, inner)

    def derivative(self) -> "TruncatedSeries":
        """Termwise derivative; the result has order ``M - 1`` (``0`` stays ``0``)."""
        if self.order == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries._raw(tuple(_norm(k * c) for k, c in enumerate(self._coeffs) if k))

    def integral(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term; order grows by one."""
        return TruncatedSeries._raw((0,) + tuple(_norm(Fraction(c) / (k + 1)) if c else 0
                                                for k, c in enumerate(self._coeffs)))

    def evaluate(self, x):
        """Horner evaluation of the truncated polynomial at ``x``."""
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    # -- serialisation --------------------------------------------------------
    def to_text(self) -> str:
        """``order=M`` header followed by ``m<TAB>num/den`` lines."""
        lines = [f"order={self.order}"]
        for m, c in enumerate(self._coeffs):
            f = Fraction(c)
            lines.append(f"{m}\t{f.numerator}/{f.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TruncatedSeries":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("order="):
            raise SeriesError("missing 'order=M' header")
        order = int(lines[0][len("order="):])
        coeffs = [0] * (order + 1)
        seen = set()
        for ln in lines[1:]:
            idx, val = ln.split("\t")
            m = int(idx)
            if not 0 <= m <= order or m in seen:
                raise SeriesError(f"bad coefficient index {m}")
            seen.add(m)
            num, den = val.split("/")
            coeffs[m] = _ratio(int(num), int(den))
        if len(seen) != order + 1:
            raise SeriesError("coefficient lines missing")
        return cls._raw(tuple(coeffs))


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return TruncatedSeries._raw(tuple(_norm(x + y) if (type(x) is not int or type(y) is not int) else x + y
                                      for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return TruncatedSeries._raw(tuple(_norm(x - y) if (type(x) is not int or type(y) is not int) else x - y
                                      for x, y in zip(a.coeffs, b.coeffs)))


def scalar_mul(a: TruncatedSeries, c) -> TruncatedSeries:
    c = _norm(c)
    if type(c) is int:
        return TruncatedSeries._raw(tuple(x * c for x in a.coeffs))
    return TruncatedSeries._raw(tuple(_norm(x * c) for x in a.coeffs))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    na, da = a.scaled()
    nb, db = b.scaled()
    return TruncatedSeries._from_scaled(_conv(na, nb, a.order), da * db)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """Integer power; negative exponents need a unit."""
    if e < 0:
        return power(inverse(a), -e)
    result = TruncatedSeries.one(a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def inverse(b: TruncatedSeries) -> TruncatedSeries:
    """``1/b`` for a unit ``b`` (nonzero constant term)."""
    nb, db = b.scaled()
    b0 = nb[0]
    if b0 == 0:
        raise NonUnitDivisor("divisor has zero constant term")
    n = b.order
    # 1/b = db * (1/B) with B the integer numerator series.
    # (1/B)_k = -(sum_{i>=1} B_i (1/B)_{k-i}) / B_0
    nz = [(i, x) for i, x in enumerate(nb) if i and x]
    if b0 in (1, -1):
        inv = [b0]
        for k in range(1, n + 1):
            s = 0
            for i, x in nz:
                if i > k:
                    break
                s += x * inv[k - i]
            inv.append(-s * b0)
        out = _unscale(inv, 1)
    else:
        acc = _Accumulator()
        acc.push(1, b0)
        for k in range(1, n + 1):
            s = 0
            nums = acc.nums
            for i, x in nz:
                if i > k:
                    break
                s += x * nums[k - i]
            acc.push(-s, acc.den * b0)
        out = _unscale(acc.nums, acc.den)
    if db != 1:
        return scalar_mul(TruncatedSeries._raw(out), db)
    return TruncatedSeries._raw(out)


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return mul(a, inverse(b))


# ---------------------------------------------------------------------------
# analytic operations
# ---------------------------------------------------------------------------

def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` for ``a`` with zero constant term.

    Uses ``n e_n = sum_k k a_k e_{n-k}``.  When the result is integral (as for
    ``q_N(z)/z``) every step is an exact integer division.
    """
    if a.coeffs[0] != 0:
        raise NonzeroConstantTerm("exp_series needs a zero constant term")
    na, da = a.scaled()
    n = a.order
    weighted = [(k, k * x) for k, x in enumerate(na) if k and x]
    acc = _Accumulator()
    acc.push(1, 1)
    for m in range(1, n + 1):
        nums = acc.nums
        s = 0
        for k, kx in weighted:
            if k > m:
                break
            s += kx * nums[m - k]
        acc.push(s, m * da * acc.den)
    return TruncatedSeries._from_scaled(acc.nums, acc.den)


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """Principal logarithm of a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise ConstantTermNotOne("log_series needs constant term 1")
    if a.order == 0:
        return TruncatedSeries.zero(0)
    d = a.derivative()
    quotient = mul(d, inverse(a.truncate(a.order - 1)))
    return quotient.integral()


def sqrt_series(a: TruncatedSeries) -> TruncatedSeries:
    """Square root with constant term 1 of a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise ConstantTermNotOne("sqrt_series needs constant term 1")
    na, da = a.scaled()
    n = a.order
    # s_m = (a_m - sum_{k=1}^{m-1} s_k s_{m-k}) / 2
    acc = _Accumulator()
    acc.push(1, 1)
    for m in range(1, n + 1):
        nums = acc.nums
        cross = 0
        for k in range(1, (m + 1) // 2):
            cross += nums[k] * nums[m - k]
        cross *= 2
        if m % 2 == 0:
            cross += nums[m // 2] ** 2
        den2 = acc.den * acc.den
        # a_m - cross/den^2 over the denominator da*den^2, then halve
        acc.push(na[m] * den2 - cross * da, 2 * da * den2)
    return TruncatedSeries._from_scaled(acc.nums, acc.den)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` truncated at the common order.

    Rectangular splitting (baby-step/giant-step): powers ``inner^0..inner^k``
    with ``k ~ sqrt(M)`` are formed once, each block of ``k`` coefficients of
    ``outer`` becomes a linear combination of them, and the blocks are
    joined by Horner's rule in ``inner^k``.
    """
    outer._check(inner)
    if inner.coeffs[0] != 0:
        raise InnerConstantNonzero("inner series must have zero constant term")
    n = outer.order
    if n == 0:
        return TruncatedSeries._raw(outer.coeffs)
    # only outer coefficients up to n / valuation(inner) can contribute
    v = inner.valuation()
    if v > n:
        return TruncatedSeries.constant(outer.coeffs[0], n)
    top = n // v
    k = max(1, isqrt(top + 1))
    ni, di = inner.scaled()
    # baby steps: inner^j for j = 0..k as scaled integer lists
    pows = [([1] + [0] * n, 1)]
    for _ in range(k):
        p, dp = pows[-1]
        pows.append((_conv(p, ni, n), dp * di))
    giant_nums, giant_den = pows[k]
    no, do = outer.scaled()
    blocks = []
    for start in range(0, top + 1, k):
        # sum_{j<k} outer[start+j] * inner^j over a common denominator
        j_max = min(k, top + 1 - start)
        den = 1
        for j in range(j_max):
            if no[start + j]:
                den = lcm(den, pows[j][1])
        acc = [0] * (n + 1)
        for j in range(j_max):
            c = no[start + j]
            if not c:
                continue
            p, dp = pows[j]
            f = c * (den // dp)
            for i in range(j * v, n + 1):
                if p[i]:
                    acc[i] += f * p[i]
        blocks.append((acc, den))
    # Horner over the giant step: result = b_0 + G*(b_1 + G*(b_2 + ...))
    res, rden = blocks[-1]
    for acc, den in reversed(blocks[:-1]):
        prod_nums = _conv(res, giant_nums, n)
        prod_den = rden * giant_den
        common = lcm(prod_den, den)
        f1 = common // prod_den
        f2 = common // den
        res = [x * f1 + y * f2 for x, y in zip(prod_nums, acc)]
        rden = common
        g = gcd(rden, *res) if any(res) else rden
        if g > 1:
            res = [x // g for x in res]
            rden //= g
    return TruncatedSeries._from_scaled(res, rden * do)


def revert(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``b`` with ``a(b(q)) = q`` and ``b(a(z)) = z``.

    Newton iteration with order doubling:
    ``b <- b - (a(b) - q) / a'(b)``.  Since ``a'(b) b' = 1`` holds to the
    accuracy already reached, the division is replaced by a product with
    ``b'``, which saves a composition per step.
    """
    if a.coeffs[0] != 0 or a.order < 1 or a.coeffs[1] == 0:
        raise NotInvertible("revert needs a_0 = 0 and a_1 != 0")
    n = a.order
    b = TruncatedSeries([0, Fraction(1) / Fraction(a.coeffs[1])], 1)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        b = b.extend(prec)
        residual = compose(a.truncate(prec), b) - TruncatedSeries.variable(prec)
        b = b - mul(residual, b.derivative().extend(prec))
    return b


# ---------------------------------------------------------------------------
# substitutions and products
# ---------------------------------------------------------------------------

def dilate(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Substitute ``z -> z^k``."""
    if k < 1:
        raise SeriesError("dilation factor must be a positive integer")
    n = a.order
    cs = [0] * (n + 1)
    for i, c in enumerate(a.coeffs):
        if i * k > n:
            break
        cs[i * k] = c
    return TruncatedSeries._raw(tuple(cs))


def alternate(a: TruncatedSeries) -> TruncatedSeries:
    """Substitute ``z -> -z``."""
    return TruncatedSeries._raw(tuple(-c if i % 2 else c for i, c in enumerate(a.coeffs)))


def rescale(a: TruncatedSeries, factor) -> TruncatedSeries:
    """Substitute ``z -> factor * z``."""
    factor = _norm(factor)
    out = []
    f = 1
    for c in a.coeffs:
        out.append(_norm(c * f))
        f *= factor
    return TruncatedSeries._raw(tuple(out))


def shift(a: TruncatedSeries, k: int = 1) -> TruncatedSeries:
    """Multiply by ``z^k`` (k >= 0) keeping the order."""
    n = a.order
    return TruncatedSeries._raw(((0,) * k + a.coeffs)[: n + 1])


def linear_factor_product(factors: Sequence[Tuple[int, int, int]], order: int) -> TruncatedSeries:
    """``prod (1 + sign * z^d)^e`` over ``(d, sign, e)`` triples, ``e`` possibly negative.

    Each factor is applied in place in O(M) integer additions.
    """
    cs = [0] * (order + 1)
    cs[0] = 1
    for d, sign, e in factors:
        if d < 1 or sign not in (1, -1):
            raise SeriesError(f"bad linear factor {(d, sign, e)}")
        if d > order or e == 0:
            continue
        if e > 0:
            for _ in range(e):
                for i in range(order, d - 1, -1):
                    cs[i] += sign * cs[i - d]
        else:
            # 1/(1 + s z^d) = sum (-s)^j z^(jd)
            for _ in range(-e):
                for i in range(d, order + 1):
                    cs[i] -= sign * cs[i - d]
    return TruncatedSeries._raw(tuple(cs))


def eta_product(spec: Sequence[Tuple[int, int]], order: int) -> TruncatedSeries:
    """``prod_{n>=1} prod_{(k, e)} (1 - z^(k n))^e`` truncated at ``order``.

    The base product ``prod_n (1 - z^(k n))`` is expanded once per scale and
    raised to the exponent with truncated multiplications.
    """
    result = TruncatedSeries.one(order)
    for k, e in spec:
        if k < 1:
            raise SeriesError("eta_product scales must be positive")
        if e == 0 or k > order:
            continue
        base = linear_factor_product([(k * n, -1, 1) for n in range(1, order // k + 1)], order)
        result = mul(result, power(base, e))
    return result
