"""Exact integer and rational arithmetic behind the hypergeometric data.

Everything here is small-integer number theory: totients, reduced residue
systems, the normalising constant ``C_N`` and the two coefficient sequences
``B_N(m)`` (integers) and ``H_N(m)`` (rationals) from which the series
``F_N`` and ``G_N`` are assembled.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, List, Tuple


class NTupleError(ValueError):
    pass


class EmptyAfterNormalization(NTupleError):
    """All entries were 1, so nothing is left after dropping them."""


class InvalidEntry(NTupleError):
    """An entry was zero or negative."""


class NonIntegerResult(ArithmeticError):
    """An exact division that must be exact was not (an arithmetic bug)."""


def prime_factors(n: int) -> List[int]:
    """Distinct prime divisors of ``n`` by trial division, ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def coprime_residues(n: int) -> Tuple[int, ...]:
    """Integers r in {1..n} with gcd(r, n) = 1."""
    return tuple(r for r in range(1, n + 1) if gcd(r, n) == 1)


def c_single(n: int) -> int:
    """``N^phi(N) * prod_{p | N} p^(phi(N)/(p-1))`` for one entry."""
    phi = euler_phi(n)
    c = n ** phi
    for p in prime_factors(n):
        q, r = divmod(phi, p - 1)
        if r:
            raise NonIntegerResult(f"p-1={p - 1} does not divide phi({n})={phi}")
        c *= p ** q
    return c


def sigma_k(n: int, k: int) -> int:
    """Divisor power sum ``sum_{d | n} d^k``."""
    if n < 1:
        raise ValueError("sigma_k needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


@dataclass(frozen=True)
class NTuple:
    """A multiset of integers ``N_j >= 2`` with its derived constants.

    Construct through :func:`make_ntuple` (or :meth:`parse`), which drops
    entries equal to 1 and sorts.  Two tuples compare equal exactly when
    they are the same multiset.
    """

    entries: Tuple[int, ...]
    phi_values: Tuple[int, ...]
    residues: Tuple[Tuple[int, ...], ...]
    c_constant: int
    phi_total: int
    m_max: int

    @classmethod
    def parse(cls, text: str) -> "NTuple":
        """Parse the comma-separated form used on the command line, e.g. ``"2,2,3"``."""
        parts = [p.strip() for p in str(text).replace("(", "").replace(")", "").split(",")]
        try:
            values = [int(p) for p in parts if p]
        except ValueError as exc:
            raise InvalidEntry(f"cannot parse tuple {text!r}") from exc
        return make_ntuple(values)

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def alphas(self) -> Tuple[Fraction, ...]:
        """The multiset ``{r_ij / N_j}`` of hypergeometric parameters."""
        return tuple(Fraction(r, n) for n, rs in zip(self.entries, self.residues) for r in rs)

    @property
    def label(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def __str__(self) -> str:
        return "(" + self.label + ")"


def make_ntuple(entries: Iterable[int]) -> NTuple:
    values = [int(e) for e in entries]
    bad = [e for e in values if e <= 0]
    if bad:
        raise InvalidEntry(f"entries must be positive, got {bad}")
    kept = sorted(e for e in values if e != 1)
    if not kept:
        raise EmptyAfterNormalization("no entry >= 2 after dropping 1s")
    phis = tuple(euler_phi(e) for e in kept)
    return NTuple(
        entries=tuple(kept),
        phi_values=phis,
        residues=tuple(coprime_residues(e) for e in kept),
        c_constant=prod(c_single(e) for e in kept),
        phi_total=sum(phis),
        m_max=max(kept),
    )


def residue_sum(n: NTuple) -> Fraction:
    """``sum_{i,j} r_ij / N_j``; equals ``phi_total / 2`` for every tuple."""
    return sum(n.alphas, Fraction(0))


def b_sequence(n: NTuple, m_last: int) -> List[int]:
    """``[B_N(0), ..., B_N(m_last)]`` via the one-step integer recurrence.

    B(m+1) = B(m) * C * prod(N_j m + r_ij) / (prod N_j^phi_j * (m+1)^Phi)
    """
    if m_last < 0:
        return []
    c = n.c_constant
    big_phi = n.phi_total
    den_const = prod(e ** p for e, p in zip(n.entries, n.phi_values))
    pairs = [(e, r) for e, rs in zip(n.entries, n.residues) for r in rs]
    out = [1]
    b = 1
    for m in range(m_last):
        num = b * c * prod(e * m + r for e, r in pairs)
        den = den_const * (m + 1) ** big_phi
        b, rem = divmod(num, den)
        if rem:
            raise NonIntegerResult(f"B_{n}({m + 1}) is not an integer")
        out.append(b)
    return out


def b_coeff(n: NTuple, m: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return b_sequence(n, m)[-1]


def h_sequence(n: NTuple, m_last: int) -> List[Fraction]:
    """``[H_N(0), ..., H_N(m_last)]`` as reduced fractions."""
    out = [Fraction(0)]
    h = Fraction(0)
    pairs = [(e, r) for e, rs in zip(n.entries, n.residues) for r in rs]
    for m in range(m_last):
        # H_N(m+1) - H_N(m) = sum_ij (N_j/(N_j m + r_ij) - 1/(m+1))
        step = sum((Fraction(e, e * m + r) for e, r in pairs), Fraction(0))
        h += step - Fraction(len(pairs), m + 1)
        out.append(h)
    return out[: m_last + 1]


def h_coeff(n: NTuple, m: int) -> Fraction:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return h_sequence(n, m)[-1]


def multisets(max_entry: int, max_k: int, min_entry: int = 2) -> List[NTuple]:
    """All multisets of entries in ``[min_entry, max_entry]`` of size 1..max_k."""
    from itertools import combinations_with_replacement

    out = []
    pool = range(min_entry, max_entry + 1)
    for k in range(1, max_k + 1):
        for combo in combinations_with_replacement(pool, k):
            out.append(make_ntuple(combo))
    return out

