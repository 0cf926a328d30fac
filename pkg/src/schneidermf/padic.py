"""Finite-precision p-adic integers.

An element of Z_p is stored as ``p**valuation * unit`` where ``unit`` is a
residue modulo ``p**trusted`` that is not divisible by p.  Only the
``valuation + trusted`` lowest base-p digits of the value are meaningful.

Elements built from exact rationals also carry the rational itself, which
lets the Schneider iteration recognise an orbit that lands exactly on 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InvalidPrime, NotAUnit, NotPAdicInteger, PrecisionExhausted

DEFAULT_PRECISION = 256

INFINITE = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not a prime")
    return p


def int_valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicInt:
    prime: int
    valuation: int | None  # None encodes ZERO
    unit: int
    trusted: int
    exact: Fraction | None = None

    def __post_init__(self):
        if self.valuation is None:
            return
        if self.valuation < 0:
            raise NotPAdicInteger("negative valuation")
        if self.trusted < 1:
            raise PrecisionExhausted("no trusted digits left")
        if self.unit % self.prime == 0:
            raise NotAUnit(f"unit {self.unit} is divisible by {self.prime}")

    @classmethod
    def zero(cls, p: int, precision: int = DEFAULT_PRECISION) -> "PAdicInt":
        return cls(p, None, 0, precision, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def modulus_exponent(self) -> int:
        """Number of low base-p digits of the value that are known."""
        if self.valuation is None:
            return self.trusted
        return self.valuation + self.trusted

    def residue(self) -> int:
        """The value as the least nonnegative residue mod p**modulus_exponent."""
        if self.valuation is None:
            return 0
        return self.prime**self.valuation * self.unit % self.prime**self.modulus_exponent

    def digits(self) -> list[int]:
        """Base-p digits c_0, c_1, ... of the known part of the value."""
        r = self.residue()
        out = []
        for _ in range(self.modulus_exponent):
            r, c = divmod(r, self.prime)
            out.append(c)
        return out

    def with_trusted(self, trusted: int) -> "PAdicInt":
        """Truncate to fewer trusted unit digits (never more)."""
        trusted = min(trusted, self.trusted)
        if self.valuation is None:
            return PAdicInt(self.prime, None, 0, trusted, self.exact)
        return PAdicInt(self.prime, self.valuation, self.unit % self.prime**trusted,
                        trusted, self.exact)

    def __repr__(self) -> str:
        if self.valuation is None:
            return f"PAdicInt(p={self.prime}, ZERO)"
        return (f"PAdicInt(p={self.prime}, v={self.valuation}, unit={self.unit}, "
                f"trusted={self.trusted}{', exact=' + str(self.exact) if self.exact is not None else ''})")


def from_rational(num: int, den: int = 1, p: int = 2,
                  precision: int = DEFAULT_PRECISION) -> PAdicInt:
    check_prime(p)
    if den == 0:
        raise ZeroDivisionError("den must be nonzero")
    if precision < 1:
        raise ValueError("precision must be positive")
    x = Fraction(num, den)
    if x == 0:
        return PAdicInt.zero(p, precision)
    if x.denominator % p == 0:
        raise NotPAdicInteger(f"{x} has negative {p}-adic valuation")
    v = int_valuation(x.numerator, p)
    m = p**precision
    unit = (x.numerator // p**v) * pow(x.denominator, -1, m) % m
    return PAdicInt(p, v, unit, precision, x)


def valuation(x: PAdicInt) -> int | float:
    """Valuation of x, or ``INFINITE`` for ZERO."""
    return INFINITE if x.valuation is None else x.valuation


def invert_unit(u: int, p: int, modulus_exponent: int) -> int:
    """Least nonnegative w with u*w = 1 mod p**modulus_exponent."""
    if u % p == 0:
        raise NotAUnit(f"{u} is divisible by {p}")
    return int(gmpy2.invert(u, p**modulus_exponent))


def sub_mod(x: int, y: int, p: int, modulus_exponent: int) -> int:
    return (x - y) % p**modulus_exponent


def mul_mod(x: int, y: int, p: int, modulus_exponent: int) -> int:
    return x * y % p**modulus_exponent


def canonicalize(residue: int, p: int, modulus_exponent: int,
                 exact: Fraction | None = None) -> PAdicInt:
    """Split a residue known mod p**modulus_exponent into valuation and unit.

    Raises PrecisionExhausted when every known digit is zero, unless ``exact``
    certifies the value really is 0.
    """
    if exact is not None and exact == 0:
        return PAdicInt.zero(p, modulus_exponent)
    r = residue % p**modulus_exponent
    if r == 0:
        raise PrecisionExhausted(
            f"residue vanishes modulo {p}^{modulus_exponent}")
    v = int_valuation(r, p)
    t = modulus_exponent - v
    return PAdicInt(p, v, (r // p**v) % p**t, t, exact)


def agree(x: PAdicInt, y: PAdicInt) -> bool:
    """Compare two elements at the smaller of their known precisions."""
    if x.prime != y.prime:
        return False
    k = min(x.modulus_exponent, y.modulus_exponent)
    m = x.prime**k
    return x.residue() % m == y.residue() % m
