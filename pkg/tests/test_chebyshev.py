from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from msect.chebyshev import (
    T,
    U,
    angle_residual,
    chebyshev,
    chebyshev_explicit,
    coeff_divisibility,
    eisenstein_irreducible,
    interval_check,
)
from msect.polynomials import Poly, compose, evaluate, parse_poly
from msect.verify import KNOWN_T, check_basic_properties, check_composition, check_pell


def test_table():
    for m, text in enumerate(KNOWN_T):
        assert T(m) == parse_poly(text)
    assert chebyshev(1).U == Poly((1,))
    assert chebyshev(0).U == Poly()
    assert U(2) == Poly((0, 2))


def test_explicit_examples():
    assert chebyshev_explicit(5).T == parse_poly("16*x^5-20*x^3+5*x")
    assert chebyshev_explicit(2).T == parse_poly("2*x^2-1")
    assert chebyshev_explicit(7).T == parse_poly("64*x^7-112*x^5+56*x^3-7*x")


def test_recurrence_matches_explicit_sums():
    for m in range(33):
        assert chebyshev(m) == chebyshev_explicit(m)


def test_numeric_cosine_identity():
    # independent of both constructions: T_m(cos t) = cos(m t)
    for m in range(0, 20):
        for t in (0.1, 0.7, 1.3, 2.9):
            val = sum(float(c) * math.cos(t) ** i for i, c in enumerate(T(m).coeffs))
            assert math.isclose(val, math.cos(m * t), abs_tol=1e-9)
            if m:
                # U_m(cos t) sin t = sin(m t) in the shifted indexing
                uval = sum(float(c) * math.cos(t) ** i for i, c in enumerate(U(m).coeffs))
                assert math.isclose(uval * math.sin(t), math.sin(m * t), abs_tol=1e-9)


def test_identities():
    assert check_composition() is None
    assert check_pell() is None
    assert check_basic_properties() is None


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_composition_commutes(r, s, t):
    assert compose(T(r), T(s)) == compose(T(s), T(r))
    assert compose(compose(T(r), T(s)), T(t)) == T(r * s * t)


def test_interval_examples():
    assert interval_check(Fraction(1, 2), 3) == (True, True)
    assert evaluate(T(3), Fraction(1, 2)) == -1
    assert interval_check(2, 2) == (False, False)
    for m in range(1, 10):
        assert interval_check(1, m) == (True, True)


@given(st.fractions(min_value=-4, max_value=4, max_denominator=1000), st.integers(1, 12))
def test_interval_flags_agree(x, m):
    a, b = interval_check(x, m)
    assert a == b


def test_angle_residual():
    assert angle_residual(Fraction(1, 2), 3) < 1e-12
    assert angle_residual(1, 9) < 1e-12
    assert angle_residual(0, 2) < 1e-12
    rng = random.Random(3)
    for _ in range(50):
        b = Fraction(rng.randint(-1000, 1000), 1000)
        assert angle_residual(b, rng.randint(1, 15)) < 1e-9
    with pytest.raises(ValueError):
        angle_residual(Fraction(3, 2), 2)


def test_coeff_divisibility():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        assert coeff_divisibility(p)
    # composite odd m fails, which is why the check is restricted to primes
    assert not all(c % 9 == 0 for c in T(9).coeffs[:-1])
    with pytest.raises(ValueError):
        coeff_divisibility(9)
    with pytest.raises(ValueError):
        coeff_divisibility(2)


def test_eisenstein():
    assert eisenstein_irreducible(3, Fraction(3, 4))
    assert not eisenstein_irreducible(3, Fraction(9, 2))
    assert not eisenstein_irreducible(5, Fraction(1, 5))
    with pytest.raises(ValueError):
        eisenstein_irreducible(4, Fraction(1, 2))
