import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schneidermf.errors import InvalidPrime, NotAUnit, NotPAdicInteger, PrecisionExhausted
from schneidermf.padic import (INFINITE, PAdicInt, agree, canonicalize, from_rational,
                               invert_unit, mul_mod, sub_mod, valuation)

from conftest import egcd_inverse


def test_from_rational_two_thirds():
    x = from_rational(2, 3, p=2, precision=7)
    assert x.valuation == 1
    assert x.unit == egcd_inverse(3, 2**7) == 43
    assert x.trusted == 7


def test_from_rational_zero_and_one():
    assert from_rational(0, 1, p=5, precision=10).is_zero
    one = from_rational(1, 1, p=3, precision=10)
    assert (one.valuation, one.unit) == (0, 1)


def test_from_rational_errors():
    with pytest.raises(NotPAdicInteger):
        from_rational(1, 2, p=2)
    with pytest.raises(InvalidPrime):
        from_rational(1, 3, p=4)
    with pytest.raises(ZeroDivisionError):
        from_rational(1, 0, p=3)


def test_valuation():
    assert valuation(from_rational(12, 1, p=2)) == 2
    assert valuation(PAdicInt.zero(2)) == INFINITE
    assert valuation(from_rational(2, 3, p=2)) == 1


@pytest.mark.parametrize("u,p,k,expected", [(3, 2, 7, 43), (1, 7, 5, 1), (4, 5, 3, 94)])
def test_invert_unit(u, p, k, expected):
    assert invert_unit(u, p, k) == expected
    assert next(w for w in range(p**k) if u * w % p**k == 1) == expected


def test_invert_non_unit():
    with pytest.raises(NotAUnit):
        invert_unit(10, 5, 3)


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(1, 300), st.integers(1, 10**40))
def test_invert_unit_property(p, k, u):
    if u % p == 0:
        u += 1
    w = invert_unit(u, p, k)
    assert 0 <= w < p**k
    assert u * w % p**k == 1
    assert w == egcd_inverse(u, p**k)


def test_canonicalize_examples():
    with pytest.raises(PrecisionExhausted):
        canonicalize(8, 2, 3)
    x = canonicalize(6, 2, 4)
    assert (x.valuation, x.unit, x.trusted) == (1, 3, 3)
    assert mul_mod(3, 5, 2, 4) == 15
    assert sub_mod(3, 5, 2, 4) == 14


def test_canonicalize_exact_zero_is_not_exhaustion():
    assert canonicalize(0, 3, 5, exact=Fraction(0)).is_zero


def test_round_trip_random_rationals():
    rng = random.Random(2024)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        n = rng.randint(-10**6, 10**6)
        d = rng.randint(1, 10**6)
        while d % p == 0:
            d += 1
        prec = rng.randint(1, 80)
        x = from_rational(n, d, p, prec)
        m = p**prec
        want = n * egcd_inverse(d, m) % m
        if x.is_zero:
            assert n == 0
            continue
        assert x.residue() % m == want
        assert x.unit % p != 0


def test_trusted_monotone_under_truncation():
    x = from_rational(7, 9, 2, 50)
    y = x.with_trusted(80)
    assert y.trusted == 50
    assert x.with_trusted(10).trusted == 10


def test_digits_view_and_agree():
    x = from_rational(12, 1, 2, 6)
    assert x.digits() == [0, 0, 1, 1, 0, 0, 0, 0]
    assert agree(x, from_rational(12 + 2**8, 1, 2, 20))
    assert not agree(x, from_rational(13, 1, 2, 20))


def test_zero_state_has_no_unit():
    z = PAdicInt.zero(3)
    assert z.unit == 0 and z.residue() == 0
    with pytest.raises(NotAUnit):
        PAdicInt(3, 1, 3, 5)
