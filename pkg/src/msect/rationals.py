"""Rationals, p-adic valuations and the height on Q.

``fractions.Fraction`` is the rational type throughout the package: it is
always in lowest terms with a positive denominator, and zero is ``0/1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime as _sympy_isprime
from sympy import primefactors as _sympy_primefactors

RationalLike = Union[int, Fraction]

def normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


def as_rational(x: RationalLike | str) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def format_rational(x: RationalLike, always_slash: bool = False) -> str:
    """Canonical text ``p/q``; integers render as ``p`` unless ``always_slash``."""
    x = Fraction(x)
    if x.denominator == 1 and not always_slash:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "/" in text:
        num, _, den = text.partition("/")
        return normalize(int(num), int(den))
    return Fraction(int(text))


def is_prime(n: int) -> bool:
    return n >= 2 and bool(_sympy_isprime(n))


def _check_prime(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")


def int_valuation(n: int, q: int) -> int:
    """Exponent of the prime ``q`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


@dataclass(frozen=True)
class ValuationResult:
    """q-adic valuation of a rational, stored additively.

    ``exponent`` is e with x = q^e * h/k; ``multiplicative_value`` is the
    absolute value q^(-e). Zero input gives ``is_zero=True`` and both fields
    ``None``.
    """

    prime: int
    exponent: int | None
    multiplicative_value: Fraction | None

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def at_most_one(self) -> bool:
        # the zero variant counts as |0|_q = 0 <= 1
        return self.is_zero or self.exponent >= 0


def valuation(x: RationalLike, q: int) -> ValuationResult:
    _check_prime(q)
    x = Fraction(x)
    if x == 0:
        return ValuationResult(q, None, None)
    e = 0
    num, den = x.numerator, x.denominator
    if num % q == 0:
        e = int_valuation(num, q)
    elif den % q == 0:
        e = -int_valuation(den, q)
    mult = Fraction(1, q**e) if e >= 0 else Fraction(q ** (-e))
    return ValuationResult(q, e, mult)


@dataclass(frozen=True)
class HeightValue:
    """An exact height with a float approximation.

    ``value`` is a ``Fraction`` over Q, or a ``QuadElem`` (real quadratic
    number) over Q(sqrt d).
    """

    value: object
    float_hint: float

    def le(self, bound: RationalLike) -> bool:
        bound = Fraction(bound)
        if isinstance(self.value, Fraction):
            return self.value <= bound
        return self.value.cmp_real(bound) <= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HeightValue):
            other = other.value
        return self.value == other

    def __hash__(self) -> int:
        return hash(self.value)


def height_q(x: RationalLike) -> HeightValue:
    x = Fraction(x)
    h = max(abs(x.numerator), x.denominator)
    return HeightValue(Fraction(h), float(h))


def height_q_by_places(x: RationalLike) -> Fraction:
    """Height as the literal product of sup{1, |x|_v} over all places of Q."""
    x = Fraction(x)
    result = max(Fraction(1), abs(x))
    if x == 0:
        return result
    for p in prime_divisors(x.numerator * x.denominator):
        result *= max(Fraction(1), valuation(x, p).multiplicative_value)
    return result


def prime_divisors(n: int) -> list[int]:
    return [int(p) for p in _sympy_primefactors(abs(n))] if n else []


def integer_root_floor(n: int, k: int) -> int:
    """Largest integer r >= 0 with r**k <= n (n >= 0)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    if n.bit_length() >= 1000:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid**k <= n:
                lo = mid
            else:
                hi = mid - 1
        return lo
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n
