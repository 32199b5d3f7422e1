"""Chebyshev polynomials T_m and U_m with exact integer coefficients.

Indexing of U is shifted from the usual one: here ``U_m`` has degree m - 1
(what most references call U_{m-1}), so that T_m^2 + (1 - x^2) U_m^2 = 1
holds with matching indices. U_0 = 0, U_1 = 1, U_2 = 2x.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from msect.polynomials import Poly, evaluate, is_eisenstein
from msect.rationals import RationalLike, is_prime

_TWO_X = Poly((0, 2))


@dataclass(frozen=True)
class ChebyshevPair:
    m: int
    T: Poly
    U: Poly


@functools.lru_cache(maxsize=None)
def chebyshev(m: int) -> ChebyshevPair:
    """T_m and U_m from T_m = 2x T_{m-1} - T_{m-2} (same recurrence for U)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return ChebyshevPair(0, Poly((1,)), Poly())
    if m == 1:
        return ChebyshevPair(1, Poly((0, 1)), Poly((1,)))
    a, b = chebyshev(m - 1), chebyshev(m - 2)
    return ChebyshevPair(m, _TWO_X * a.T - b.T, _TWO_X * a.U - b.U)


def T(m: int) -> Poly:
    return chebyshev(m).T


def U(m: int) -> Poly:
    return chebyshev(m).U


def chebyshev_explicit(m: int) -> ChebyshevPair:
    """T_m and U_m straight from the binomial double sums.

    T_m = sum_{0<=2k<=m} sum_{l<=k} (-1)^(k+l) C(m,2k) C(k,l) x^(m-2k+2l)
    U_m = sum_{1<=2k+1<=m} C(m,2k+1) x^(m-2k-1) (x^2-1)^k
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    t = [0] * (m + 1)
    for k in range(m // 2 + 1):
        for l in range(k + 1):
            t[m - 2 * k + 2 * l] += (-1) ** (k + l) * math.comb(m, 2 * k) * math.comb(k, l)
    u = [0] * max(m, 1)
    for k in range((m - 1) // 2 + 1):
        # (x^2 - 1)^k expanded
        for l in range(k + 1):
            u[m - 2 * k - 1 + 2 * l] += math.comb(m, 2 * k + 1) * math.comb(k, l) * (-1) ** (k - l)
    return ChebyshevPair(m, Poly(t), Poly(u))


def interval_check(x: RationalLike, m: int) -> tuple[bool, bool]:
    """(|x| <= 1, |T_m(x)| <= 1), both decided exactly."""
    x = Fraction(x)
    return abs(x) <= 1, abs(evaluate(T(m), x)) <= 1


def angle_residual(b: RationalLike, m: int) -> float:
    """|Re(beta^m) - T_m(b)| in floating point, beta = b + i sqrt(1 - b^2)."""
    b = Fraction(b)
    if abs(b) > 1:
        raise ValueError("|b| must be <= 1")
    fb = float(b)
    beta = complex(fb, math.sqrt(max(0.0, 1.0 - fb * fb)))
    return abs((beta**m).real - float(evaluate(T(m), b)))


def _odd_prime(m: int) -> None:
    if m < 3 or m % 2 == 0 or not is_prime(m):
        raise ValueError(f"m={m} must be an odd prime")


def coeff_divisibility(m: int) -> bool:
    """Every coefficient of T_m except the leading one is divisible by m."""
    _odd_prime(m)
    return all(c % m == 0 for c in T(m).coeffs[:-1])


def eisenstein_irreducible(m: int, a: RationalLike) -> bool:
    """Certify T_m(x) - a irreducible over Q by Eisenstein at m.

    a = r/s in lowest terms; True iff m | r, m^2 does not divide r and
    gcd(s, m) = 1. False means the certificate does not apply, not that the
    polynomial is reducible.
    """
    _odd_prime(m)
    a = Fraction(a)
    r, s = a.numerator, a.denominator
    ok = r % m == 0 and r % (m * m) != 0 and math.gcd(s, m) == 1
    if ok:
        # s*T_m - r is the cleared polynomial; check the criterion on it directly
        assert is_eisenstein(T(m) * s - r, m)
    return ok

