"""The Schneider continued-fraction map T_p(x) = p**a / x - b on pZ_p.

Precision bookkeeping: if x = p**a * u with u known to t digits, then
p**a / x = 1/u is a unit known to t digits, and subtracting b leaves a value
known modulo p**t.  The next valuation a' is read off those t digits, so the
next element keeps t - a' trusted unit digits.  Each step therefore lowers the
absolute precision by exactly a.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FiniteOrbit, NotInDomain, PrecisionExhausted
from .padic import PAdicInt, canonicalize, check_prime, int_valuation, invert_unit


class Termination(enum.Enum):
    OPEN = "open"
    FINITE_EXPANSION = "finite"
    PRECISION_EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class DigitSequence:
    prime: int
    pairs: tuple[tuple[int, int], ...]
    terminated: Termination
    trusted_count: int
    # T_p^n(x) after the last emitted pair; None once precision ran out
    tail: PAdicInt | None = field(default=None, compare=False)

    @property
    def a(self) -> list[int]:
        return [a for a, _ in self.pairs]

    @property
    def b(self) -> list[int]:
        return [b for _, b in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)


def _check_domain(x: PAdicInt) -> None:
    if x.valuation is not None and x.valuation < 1:
        raise NotInDomain(f"{x} has valuation 0, not in pZ_p")


def _step(x: PAdicInt):
    """One application of T_p.

    Returns ``(a, b, next)`` where ``next`` is None if the image could not be
    resolved at the available precision.  The digit pair is valid either way.
    """
    p = x.prime
    a = x.valuation
    t = x.trusted
    w = invert_unit(x.unit, p, t)
    b = w % p
    exact = None
    if x.exact is not None:
        exact = Fraction(p**a) / x.exact - b
    try:
        nxt = canonicalize(w - b, p, t, exact)
    except PrecisionExhausted:
        nxt = None
    return a, b, nxt


def schneider_step(x: PAdicInt) -> tuple[int, int, PAdicInt, int]:
    """Apply T_p once: returns ``(a, b, T_p(x), digits_consumed)``."""
    if x.is_zero:
        raise FiniteOrbit("T_p is not iterated past 0")
    _check_domain(x)
    a, b, nxt = _step(x)
    if nxt is None:
        raise PrecisionExhausted(
            f"T_p(x) vanishes to all {x.trusted} trusted digits")
    return a, b, nxt, a


def digits(x: PAdicInt, max_pairs: int) -> DigitSequence:
    """Extract up to ``max_pairs`` Schneider digit pairs (a_i, b_i) of x."""
    _check_domain(x)
    pairs = []
    status = Termination.OPEN
    cur: PAdicInt | None = x
    if x.is_zero:
        return DigitSequence(x.prime, (), Termination.FINITE_EXPANSION, 0, x)
    while len(pairs) < max_pairs:
        a, b, cur = _step(cur)
        pairs.append((a, b))
        if cur is None:
            status = Termination.PRECISION_EXHAUSTED
            break
        if cur.is_zero:
            status = Termination.FINITE_EXPANSION
            break
    return DigitSequence(x.prime, tuple(pairs), status, len(pairs), cur)


def reconstruct(seq: DigitSequence | list[tuple[int, int]],
                tail: PAdicInt | None = None,
                precision: int | None = None,
                p: int | None = None) -> PAdicInt:
    """Evaluate p^a1/(b1 + p^a2/(b2 + ... + p^an/(bn + tail))).

    ``tail`` defaults to an exact zero carried at ``precision`` digits.  The
    result is truncated to at most ``precision`` known digits when given.
    """
    if isinstance(seq, DigitSequence):
        pairs = seq.pairs
        p = seq.prime
    else:
        pairs = tuple(seq)
        if p is None:
            p = tail.prime if tail is not None else None
    if p is None:
        raise ValueError("prime is required")
    check_prime(p)
    if tail is None:
        if precision is None:
            raise ValueError("precision is required with an exact zero tail")
        tail = PAdicInt.zero(p, precision)
    y = tail
    for a, b in reversed(pairs):
        k = y.modulus_exponent
        w = invert_unit((b + y.residue()) % p**k, p, k)
        exact = None
        if y.exact is not None:
            exact = Fraction(p**a) / (b + y.exact)
        y = PAdicInt(p, a, w, k, exact)
    if precision is not None and not y.is_zero and y.modulus_exponent > precision:
        y = y.with_trusted(max(precision - y.valuation, 1))
    return y


def rational_digits(num: int, den: int, p: int, max_pairs: int
                    ) -> tuple[list[tuple[int, int]], bool]:
    """Schneider digits of num/den computed in exact integer arithmetic.

    Returns the pairs and whether the expansion terminated at 0.  This shares
    no code with the residue-based iteration and serves as its oracle.
    """
    check_prime(p)
    x = Fraction(num, den)
    pairs = []
    while x != 0 and len(pairs) < max_pairs:
        if x.denominator % p == 0 or x.numerator % p != 0:
            raise NotInDomain(f"{x} is not in pZ_p")
        a = int_valuation(x.numerator, p)
        y = Fraction(p**a) / x
        # y is a p-adic unit; b = y mod p
        b = y.numerator * pow(y.denominator, -1, p) % p
        pairs.append((a, b))
        x = y - b
    return pairs, x == 0
