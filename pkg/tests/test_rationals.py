from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from msect.rationals import (
    format_rational,
    height_q,
    height_q_by_places,
    int_valuation,
    integer_root_floor,
    is_prime,
    normalize,
    parse_rational,
    prime_divisors,
    valuation,
)

nonzero = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)
primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101])


def test_normalize_examples():
    assert normalize(6, -4) == Fraction(-3, 2)
    assert normalize(0, 5) == Fraction(0, 1)
    r = normalize(0, -7)
    assert (r.numerator, r.denominator) == (0, 1)
    with pytest.raises(ZeroDivisionError):
        normalize(1, 0)


def test_valuation_examples():
    v = valuation(Fraction(9, 2), 3)
    assert v.exponent == 2 and v.multiplicative_value == Fraction(1, 9)
    v = valuation(Fraction(5, 27), 3)
    assert v.exponent == -3 and v.multiplicative_value == 27
    zero = valuation(0, 3)
    assert zero.is_zero and zero.exponent is None and zero.multiplicative_value is None
    assert zero.at_most_one()


def test_valuation_rejects_non_prime():
    with pytest.raises(ValueError):
        valuation(Fraction(1, 2), 4)


def test_height_examples():
    assert height_q(Fraction(-7, 3)).value == 7
    assert height_q(0).value == 1
    assert height_q(Fraction(2, 9)).value == 9


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))

    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if slow(n)]
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(nonzero, nonzero, primes)
def test_valuation_multiplicative(x, y, q):
    vx, vy, vxy = valuation(x, q), valuation(y, q), valuation(x * y, q)
    assert vxy.exponent == vx.exponent + vy.exponent
    assert vxy.multiplicative_value == vx.multiplicative_value * vy.multiplicative_value


@given(nonzero, nonzero, primes)
def test_valuation_ultrametric(x, y, q):
    if x + y == 0:
        return
    vs = valuation(x + y, q).multiplicative_value
    assert vs <= max(valuation(x, q).multiplicative_value, valuation(y, q).multiplicative_value)


@given(nonzero)
def test_product_formula(x):
    # |x|_inf * prod_p |x|_p = 1
    prod = Fraction(abs(x))
    for p in prime_divisors(x.numerator * x.denominator):
        prod *= valuation(x, p).multiplicative_value
    assert prod == 1


@given(st.fractions(max_denominator=10**5))
def test_height_matches_places(x):
    assert height_q(x).value == height_q_by_places(x)


@given(nonzero, st.integers(1, 6))
def test_height_power_law(x, n):
    assert height_q(x**n).value == height_q(x).value ** n


@given(nonzero)
def test_height_inverse(x):
    assert height_q(1 / x).value == height_q(x).value


@given(st.fractions(max_denominator=10**9))
def test_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x
    assert parse_rational(format_rational(x, always_slash=True)) == x


def test_format_examples():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(3), always_slash=True) == "3/1"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


@given(st.integers(1, 10**30), st.integers(2, 7))
def test_int_valuation_and_root(n, q):
    if is_prime(q):
        e = int_valuation(n, q)
        assert n % q**e == 0 and n % q ** (e + 1) != 0
    r = integer_root_floor(n, q)
    assert r**q <= n < (r + 1) ** q
