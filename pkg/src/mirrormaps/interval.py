"""Outward-rounded real intervals on top of mpmath's low-level interval kernels.

Every operation returns an interval that contains the exact result of the
same operation on any points of the operands.  The working precision is a
property of each interval (and of the call that creates it); nothing here
touches mpmath's global context.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Tuple

from mpmath import mpf
from mpmath.libmp import (
    from_int,
    from_rational,
    fzero,
    mpf_add,
    mpf_div,
    mpf_euler,
    mpf_le,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_float,
    to_str,
)
from mpmath.libmp import libmpi

DEFAULT_PREC = 256
GUARD_BITS = 32

_MpfPair = Tuple[tuple, tuple]


def digits_to_bits(digits: int) -> int:
    """Bits needed for ``digits`` decimal digits, rounded up."""
    return int(digits * 3.3219280948873623) + 1


def _widen(pair: _MpfPair, prec: int) -> _MpfPair:
    """Push both ends out by one unit at ``prec`` (insurance for library constants)."""
    lo, hi = pair
    ulp_lo = mpf_shift(from_int(1), _exponent(lo) - prec)
    ulp_hi = mpf_shift(from_int(1), _exponent(hi) - prec)
    return (mpf_sub(lo, ulp_lo, prec, round_floor), mpf_add(hi, ulp_hi, prec, round_ceiling))


def _exponent(x) -> int:
    if x == fzero:
        return -(1 << 20)
    sign, man, exp, bc = x
    return exp + bc


@dataclass(frozen=True)
class BigFloatInterval:
    """Closed interval ``[lo, hi]`` with endpoints stored as raw mpf tuples.

    ``certified`` is ``False`` for heuristic estimates (for example radius
    of convergence fits), where the interval is only an error indication.
    """

    lo: tuple
    hi: tuple
    prec: int = DEFAULT_PREC
    certified: bool = True

    def __post_init__(self):
        if mpf_lt(self.hi, self.lo):
            raise ValueError("interval endpoints out of order")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def _make(cls, pair: _MpfPair, prec: int, certified: bool = True) -> "BigFloatInterval":
        return cls(pair[0], pair[1], prec, certified)

    @classmethod
    def from_value(cls, x, prec: int = DEFAULT_PREC) -> "BigFloatInterval":
        """Enclosure of an exact integer or rational."""
        if isinstance(x, BigFloatInterval):
            return x
        if isinstance(x, int):
            return cls._make((from_int(x, prec, round_floor), from_int(x, prec, round_ceiling)), prec)
        if isinstance(x, Rational):
            p, q = x.numerator, x.denominator
            return cls._make((from_rational(p, q, prec, round_floor),
                              from_rational(p, q, prec, round_ceiling)), prec)
        raise TypeError(f"cannot enclose {type(x).__name__} exactly")

    @classmethod
    def hull(cls, a, b, prec: int = DEFAULT_PREC) -> "BigFloatInterval":
        a = cls.from_value(a, prec)
        b = cls.from_value(b, prec)
        lo = a.lo if mpf_le(a.lo, b.lo) else b.lo
        hi = b.hi if mpf_le(a.hi, b.hi) else a.hi
        return cls(lo, hi, max(a.prec, b.prec), a.certified and b.certified)

    @classmethod
    def estimate(cls, mid: float, radius: float, prec: int = 53) -> "BigFloatInterval":
        """Non-certified interval around a floating-point estimate."""
        m = mpf(mid)
        r = abs(mpf(radius))
        return cls((m - r)._mpf_, (m + r)._mpf_, prec, certified=False)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "BigFloatInterval":
        return cls._make(libmpi.mpi_pi(prec), prec)

    @classmethod
    def euler_gamma(cls, prec: int = DEFAULT_PREC) -> "BigFloatInterval":
        pair = (mpf_euler(prec, round_floor), mpf_euler(prec, round_ceiling))
        return cls._make(_widen(pair, prec), prec)

    # -- inspection -----------------------------------------------------------
    @property
    def lower(self) -> mpf:
        return mpf(self.lo)

    @property
    def upper(self) -> mpf:
        return mpf(self.hi)

    @property
    def midpoint(self) -> mpf:
        return mpf(libmpi.mpi_mid((self.lo, self.hi), self.prec))

    @property
    def radius(self) -> mpf:
        return mpf(libmpi.mpi_delta((self.lo, self.hi), self.prec)) / 2

    @property
    def width(self) -> mpf:
        return mpf(libmpi.mpi_delta((self.lo, self.hi), self.prec))

    def __float__(self) -> float:
        return to_float(libmpi.mpi_mid((self.lo, self.hi), 53))

    def contains(self, x) -> bool:
        other = BigFloatInterval.from_value(x, self.prec)
        return mpf_le(self.lo, other.lo) and mpf_le(other.hi, self.hi)

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def overlaps(self, other) -> bool:
        other = BigFloatInterval.from_value(other, self.prec)
        return not (mpf_lt(self.hi, other.lo) or mpf_lt(other.hi, self.lo))

    def certainly_lt(self, other) -> bool:
        other = BigFloatInterval.from_value(other, self.prec)
        return mpf_lt(self.hi, other.lo)

    def certainly_le(self, other) -> bool:
        other = BigFloatInterval.from_value(other, self.prec)
        return mpf_le(self.hi, other.lo)

    def certainly_gt(self, other) -> bool:
        other = BigFloatInterval.from_value(other, self.prec)
        return mpf_lt(other.hi, self.lo)

    def certainly_ge(self, other) -> bool:
        other = BigFloatInterval.from_value(other, self.prec)
        return mpf_le(other.hi, self.lo)

    def __str__(self) -> str:
        digits = max(5, int(self.prec * 0.30103))
        return f"[{to_str(self.lo, digits)}, {to_str(self.hi, digits)}]"

    def __repr__(self) -> str:
        tag = "" if self.certified else ", certified=False"
        return f"BigFloatInterval({self}, prec={self.prec}{tag})"

    def to_strings(self, digits: int = 20) -> Tuple[str, str]:
        return to_str(self.lo, digits), to_str(self.hi, digits)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "BigFloatInterval":
        return BigFloatInterval.from_value(other, self.prec)

    def _combine(self, other, fn) -> "BigFloatInterval":
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        return BigFloatInterval._make(fn((self.lo, self.hi), (o.lo, o.hi), prec), prec,
                                      self.certified and o.certified)

    def __add__(self, other):
        return self._combine(other, libmpi.mpi_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, libmpi.mpi_sub)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._combine(other, libmpi.mpi_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not (mpf_lt(fzero, o.lo) or mpf_lt(o.hi, fzero)):
            raise ZeroDivisionError("divisor interval contains zero")
        return self._combine(o, libmpi.mpi_div)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return BigFloatInterval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec, self.certified)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("only integer powers; use exp/log for real exponents")
        if e < 0:
            return 1 / (self ** (-e))
        return BigFloatInterval._make(libmpi.mpi_pow_int((self.lo, self.hi), e, self.prec),
                                      self.prec, self.certified)

    def scale_by_int(self, num: int, den: int = 1) -> "BigFloatInterval":
        """Multiply by the exact rational ``num/den`` with two roundings."""
        lo, hi = self.lo, self.hi
        if num < 0:
            lo, hi, num = mpf_neg(hi), mpf_neg(lo), -num
        n = from_int(num)
        lo = mpf_mul(lo, n, self.prec, round_floor)
        hi = mpf_mul(hi, n, self.prec, round_ceiling)
        if den != 1:
            d = from_int(den)
            lo = mpf_div(lo, d, self.prec, round_floor)
            hi = mpf_div(hi, d, self.prec, round_ceiling)
        return BigFloatInterval(lo, hi, self.prec, self.certified)

    def _unary(self, fn) -> "BigFloatInterval":
        # evaluate with guard bits and widen by an ulp of the target precision
        pair = fn((self.lo, self.hi), self.prec + GUARD_BITS)
        return BigFloatInterval._make(_widen(pair, self.prec), self.prec, self.certified)

    def exp(self) -> "BigFloatInterval":
        return self._unary(libmpi.mpi_exp)

    def log(self) -> "BigFloatInterval":
        if not mpf_lt(fzero, self.lo):
            raise ValueError("log of an interval reaching zero or below")
        return self._unary(libmpi.mpi_log)

    def sqrt(self) -> "BigFloatInterval":
        if mpf_lt(self.lo, fzero):
            raise ValueError("sqrt of an interval reaching below zero")
        return self._unary(libmpi.mpi_sqrt)

    def cot(self) -> "BigFloatInterval":
        return self._unary(libmpi.mpi_cot)

    def rpow(self, exponent) -> "BigFloatInterval":
        """``self ** exponent`` for a positive base and any real exponent."""
        return (self.log() * exponent).exp()

    def max_with(self, other) -> "BigFloatInterval":
        o = self._coerce(other)
        lo = o.lo if mpf_lt(self.lo, o.lo) else self.lo
        hi = o.hi if mpf_lt(self.hi, o.hi) else self.hi
        return BigFloatInterval(lo, hi, max(self.prec, o.prec), self.certified and o.certified)


def exact_one(prec: int = DEFAULT_PREC) -> BigFloatInterval:
    return BigFloatInterval.from_value(1, prec)


def as_fraction_bounds(x: BigFloatInterval) -> Tuple[Fraction, Fraction]:
    """Endpoints as exact fractions (useful for comparisons with exact data)."""
    def conv(v):
        sign, man, exp, bc = v
        if not man:
            return Fraction(0)
        val = Fraction(int(man)) * (Fraction(2) ** exp)
        return -val if sign else val
    return conv(x.lo), conv(x.hi)
