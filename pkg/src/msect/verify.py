"""Seeded invariant suite shared by the ``verify`` subcommand and the tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from msect.census import census
from msect.chebyshev import T, U, chebyshev, chebyshev_explicit, interval_check
from msect.errors import InconsistencyError
from msect.polynomials import Poly, clear_denominators, compose, evaluate, format_poly, rational_roots
from msect.quadfield import Field, QQ
from msect.rationals import valuation
from msect.sectability import decide_sectable, witness_exponent, witness_family

DEFAULT_SEED = 20240601

# Chebyshev T_0 .. T_7 as printed in standard tables.
KNOWN_T = [
    "1",
    "x",
    "2*x^2-1",
    "4*x^3-3*x",
    "8*x^4-8*x^2+1",
    "16*x^5-20*x^3+5*x",
    "32*x^6-48*x^4+18*x^2-1",
    "64*x^7-112*x^5+56*x^3-7*x",
]

WITNESS_MS = (6, 10, 12, 20, 24)
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def random_rational(rng: random.Random, spread: int = 3) -> Fraction:
    """Rational with prime-power-rich numerator and denominator.

    Plain uniform p/q rarely has a high power of a fixed prime in the
    denominator, which is exactly the case the valuation law cares about.
    """
    num = rng.randint(-999, 999)
    den = rng.randint(1, 999)
    for p in SMALL_PRIMES:
        if rng.random() < 0.3:
            den *= p ** rng.randint(1, spread)
        if rng.random() < 0.2:
            num *= p ** rng.randint(1, spread)
    if rng.random() < 0.5:
        # bias towards the unit interval so both interval flags are exercised
        num = num % (2 * den + 1) - den
    return Fraction(num, den)


def check_known_table() -> str | None:
    for m, text in enumerate(KNOWN_T):
        if format_poly(T(m)) != text:
            return f"T_{m} = {format_poly(T(m))}, expected {text}"
    return None


def check_explicit(max_m: int = 32) -> str | None:
    for m in range(max_m + 1):
        pair, ref = chebyshev(m), chebyshev_explicit(m)
        if pair.T != ref.T or pair.U != ref.U:
            return f"recurrence and explicit sums differ at m={m}"
    return None


def check_composition(max_rs: int = 8) -> str | None:
    for r in range(max_rs + 1):
        for s in range(max_rs + 1):
            if T(r * s) != compose(T(r), T(s)):
                return f"T_{r * s} != T_{r} o T_{s}"
    return None


def check_pell(max_m: int = 32) -> str | None:
    one_minus_x2 = Poly((1, 0, -1))
    for m in range(max_m + 1):
        if T(m) * T(m) + one_minus_x2 * U(m) * U(m) != Poly((1,)):
            return f"Pell identity fails at m={m}"
    return None


def check_basic_properties(max_m: int = 32) -> str | None:
    """Leading coefficient, parity and values at 0 and +-1."""
    neg_x = Poly((0, -1))
    for m in range(max_m + 1):
        t = T(m)
        if t.degree != m:
            return f"deg T_{m} = {t.degree}"
        if m >= 1 and t.lead != 2 ** (m - 1):
            return f"lead T_{m} = {t.lead}"
        if compose(t, neg_x) != (t if m % 2 == 0 else -t):
            return f"T_{m} has the wrong parity"
        if any(c != 0 for c in t.coeffs[(m + 1) % 2 :: 2]):
            return f"T_{m} has a monomial of the wrong parity"
        if evaluate(t, Fraction(1)) != 1 or evaluate(t, Fraction(-1)) != (-1) ** m:
            return f"T_{m}(+-1) wrong"
        expect0 = 0 if m % 2 else (-1) ** (m // 2)
        if evaluate(t, Fraction(0)) != expect0:
            return f"T_{m}(0) wrong"
    return None


def check_interval(rng: random.Random, n: int = 1000, max_m: int = 12) -> str | None:
    for _ in range(n):
        x = random_rational(rng)
        for m in range(1, max_m + 1):
            inside, image_inside = interval_check(x, m)
            if inside != image_inside:
                return f"|x| <= 1 and |T_{m}(x)| <= 1 disagree at x={x}"
    return None


def check_valuation_law(rng: random.Random, n: int = 1000, primes=(3, 5, 7, 11), ms=range(2, 10)) -> tuple[str | None, int]:
    """|T_m(r)|_q = |r|_q^m when |r|_q > 1, and |T_m(r)|_q <= 1 otherwise.

    Returns (error or None, number of cases checked).
    """
    cases = 0
    for _ in range(n):
        r = random_rational(rng)
        for q in primes:
            nu = valuation(r, q)
            if nu.at_most_one():
                for m in ms:
                    cases += 1
                    if not valuation(evaluate(T(m), r), q).at_most_one():
                        return f"|T_{m}(r)|_{q} > 1 although |r|_{q} <= 1 at r={r}", cases
                continue
            for m in ms:
                cases += 1
                got = valuation(evaluate(T(m), r), q).multiplicative_value
                if got != nu.multiplicative_value**m:
                    return f"law fails at r={r}, q={q}, m={m}", cases
    return None, cases


def check_witness_families() -> str | None:
    for m in WITNESS_MS:
        a = witness_family(m)
        if rational_roots(clear_denominators(T(m) - a)[0]):
            return f"T_{m} - a has a rational root for a={a}"
        if not decide_sectable(a, m).sectable:
            return f"a={a} not {m}-sectable"
        if valuation(a, 3).exponent != -witness_exponent(m):
            return f"3-adic exponent of a={a} is {valuation(a, 3).exponent}"
    return None


def check_decisions(rng: random.Random, n: int = 50) -> str | None:
    if decide_sectable(Fraction(1, 2), 3).sectable:
        return "1/2 reported trisectable"
    if not decide_sectable(Fraction(0), 3).sectable:
        return "0 reported not trisectable"
    for m in range(1, 25):
        for a in (Fraction(1), Fraction(-1)):
            if not decide_sectable(a, m).sectable:
                return f"{a} not {m}-sectable"
    for _ in range(n):
        a = Fraction(rng.randint(-10**6, 10**6), 10**6)
        m = 2 ** rng.randint(0, 6)
        if not decide_sectable(a, m).sectable:
            return f"{a} not {m}-sectable"
    return None


def check_unit_identity(field: Field, max_b: int) -> str | None:
    """in_unit = (total + 3) / 2 for every integer B <= max_b (census raises otherwise)."""
    try:
        for b in range(1, max_b + 1):
            census(field, b)
    except InconsistencyError as exc:
        return str(exc)
    return None


def _timed(name: str, fn: Callable[[], str | None | tuple]) -> CheckResult:
    start = time.perf_counter()
    out = fn()
    detail = "ok"
    if isinstance(out, tuple):
        out, cases = out
        detail = f"ok, {cases} cases"
    elapsed = time.perf_counter() - start
    return CheckResult(name, out is None, out or detail, elapsed)


def run_suite(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    """Run every invariant; ``quick`` shrinks the random and census sizes."""
    n = 100 if quick else 1000
    q_max, quad_max = (60, 12) if quick else (200, 30)
    rng = random.Random(seed)
    return [
        _timed("chebyshev-table", check_known_table),
        _timed("chebyshev-explicit", check_explicit),
        _timed("composition", check_composition),
        _timed("pell", check_pell),
        _timed("parity-lead-values", check_basic_properties),
        _timed("interval-preservation", lambda: check_interval(rng, n)),
        _timed("valuation-law", lambda: check_valuation_law(rng, n)),
        _timed("witness-families", check_witness_families),
        _timed("wantzel-decisions", lambda: check_decisions(rng)),
        _timed("unit-identity Q", lambda: check_unit_identity(QQ, q_max)),
        _timed("unit-identity Q(sqrt 2)", lambda: check_unit_identity(Field(2), quad_max)),
        _timed("unit-identity Q(sqrt 5)", lambda: check_unit_identity(Field(5), quad_max)),
    ]
