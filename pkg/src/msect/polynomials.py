"""Dense univariate polynomials over Z, Q and Q(sqrt d).

``Poly`` stores coefficients constant term first, with trailing zeros
stripped; the zero polynomial has no coefficients. Coefficients may be
``int``, ``Fraction`` or ``QuadElem`` and mix freely as Python numbers do.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import Poly as _SymPoly
from sympy import divisors as _divisors
from sympy import symbols as _symbols

from msect.quadfield import Field, QuadElem, format_elem, parse_elem
from msect.rationals import format_rational, is_square, parse_rational


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        result = Poly((1,))
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        return evaluate(self, x)

    def map(self, fn) -> Poly:
        return Poly(fn(c) for c in self.coeffs)

    def conj(self) -> Poly:
        return self.map(lambda c: c.conj() if isinstance(c, QuadElem) else c)

    def __str__(self) -> str:
        return format_poly(self)


def _as_poly(p) -> Poly:
    return p if isinstance(p, Poly) else Poly((p,))


def _check_field(p: Poly, x) -> None:
    ds = {c.d for c in p.coeffs if isinstance(c, QuadElem)}
    if isinstance(x, QuadElem):
        ds.add(x.d)
    if len(ds) > 1:
        raise ValueError(f"field mismatch: Q(sqrt d) for d in {sorted(ds)}")


def evaluate(p: Poly, x):
    """Exact Horner evaluation of p at x."""
    _check_field(p, x)
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def compose(p: Poly, q: Poly) -> Poly:
    """p(q(x))."""
    acc = Poly()
    for c in reversed(p.coeffs):
        acc = acc * q + c
    return acc


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Long division over a field (coefficients become Fractions/QuadElems)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) if isinstance(c, int) else c for c in a.coeffs]
    quot = [0] * max(len(rem) - b.degree, 0)
    lead = b.lead
    for i in range(len(rem) - 1 - b.degree, -1, -1):
        c = rem[i + b.degree] / lead
        quot[i] = c
        if _is_zero(c):
            continue
        for j, bc in enumerate(b.coeffs):
            rem[i + j] = rem[i + j] - c * bc
    return Poly(quot), Poly(rem[: b.degree] if b.degree > 0 else ())


def clear_denominators(p: Poly) -> tuple[Poly, Fraction]:
    """Primitive integer polynomial equal to ``multiplier * p``, multiplier > 0."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    cs = [Fraction(c) for c in p.coeffs]
    den = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    g = math.gcd(*ints)
    return Poly(c // g for c in ints), Fraction(den, g)


def _int_coeffs(p: Poly) -> list[int]:
    cs = []
    for c in p.coeffs:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("rational_roots needs integer coefficients; clear denominators first")
            c = c.numerator
        if not isinstance(c, int):
            raise TypeError(f"non-integer coefficient {c!r}")
        cs.append(c)
    return cs


@dataclass(frozen=True)
class RootSearch:
    """Outcome of an exhaustive rational root search.

    ``candidates`` counts candidate values p/q that were examined (after the
    Cauchy bound cut); every one that is not in ``roots`` was eliminated
    exactly.
    """

    roots: frozenset
    candidates: int


def rational_root_search(p: Poly) -> RootSearch:
    cs = _int_coeffs(p)
    if not cs:
        raise ValueError("zero polynomial")
    roots: set[Fraction] = set()
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        cs = cs[k:]
    n = len(cs) - 1
    if n == 0:
        return RootSearch(frozenset(roots), 0)
    g = math.gcd(*cs)
    cs = [c // g for c in cs]
    a0, an = cs[0], cs[-1]
    f_one = sum(cs)
    f_minus = sum(c if i % 2 == 0 else -c for i, c in enumerate(cs))
    # Cauchy bound: |root| <= 1 + max|c_i| / |an|
    lead = abs(an)
    reach = lead + max(abs(c) for c in cs[:-1])
    tested = 0
    num_divs = _divisors(abs(a0))
    for q in _divisors(lead):
        qpow = [1]
        for _ in range(n):
            qpow.append(qpow[-1] * q)
        for pa in num_divs:
            if pa * lead > reach * q:
                break
            if math.gcd(pa, q) != 1:
                continue
            for s in (pa, -pa):
                tested += 1
                step = q - s
                if (f_one != 0) if step == 0 else (f_one % step != 0):
                    continue
                step = q + s
                if (f_minus != 0) if step == 0 else (f_minus % step != 0):
                    continue
                acc = an
                for i in range(n - 1, -1, -1):
                    acc = acc * s + cs[i] * qpow[n - i]
                if acc == 0:
                    roots.add(Fraction(s, q))
    return RootSearch(frozenset(roots), tested)


def rational_roots(p: Poly) -> set[Fraction]:
    """All rational roots of an integer polynomial (rational root theorem)."""
    return set(rational_root_search(p).roots)


def _field_d(p: Poly, d: int | None) -> int:
    ds = {c.d for c in p.coeffs if isinstance(c, QuadElem)}
    if d is not None:
        ds.add(d)
    if len(ds) != 1:
        raise ValueError("cannot determine a single quadratic field for the polynomial")
    return ds.pop()


def norm_polynomial(p: Poly) -> Poly:
    """p times its coefficient-wise conjugate, as a polynomial over Q."""
    prod = p * p.conj()
    out = []
    for c in prod.coeffs:
        if isinstance(c, QuadElem):
            if c.v != 0:
                raise AssertionError("conjugate norm left an irrational coefficient")
            c = c.u
        out.append(Fraction(c))
    return Poly(out)


def _quadratic_roots_in_field(c2: int, c1: int, c0: int, d: int) -> list[QuadElem]:
    disc = c1 * c1 - 4 * c2 * c0
    if disc <= 0 or disc % d or not is_square(disc // d):
        return []
    k = math.isqrt(disc // d)
    return [
        QuadElem(Fraction(-c1, 2 * c2), Fraction(sign * k, 2 * c2), d)
        for sign in (1, -1)
    ]


@dataclass(frozen=True)
class QuadRootSearch:
    roots: frozenset
    rational_candidates: int
    quadratic_factors: int


def quad_root_search(p: Poly, d: int | None = None) -> QuadRootSearch:
    """Roots of p in Q(sqrt d), with a count of what was examined.

    Reduces to N = p * conj(p) over Q; candidates are the rational roots of
    N and the roots of its irreducible quadratic factors over Q whose
    discriminant is d times a square. Every candidate is kept only if p
    vanishes at it exactly.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    d = _field_d(p, d)
    n_int, _ = clear_denominators(norm_polynomial(p))
    search = rational_root_search(n_int)
    candidates = [QuadElem(r, 0, d) for r in search.roots]
    x = _symbols("x")
    _, factors = _SymPoly(list(reversed(n_int.coeffs)), x, domain="ZZ").factor_list()
    quadratics = 0
    for fac, _mult in factors:
        if fac.degree() == 2:
            quadratics += 1
            c2, c1, c0 = (int(c) for c in fac.all_coeffs())
            candidates.extend(_quadratic_roots_in_field(c2, c1, c0, d))
    roots = frozenset(r for r in candidates if evaluate(p, r) == 0)
    return QuadRootSearch(roots, search.candidates, quadratics)


def quad_roots(p: Poly, d: int | None = None) -> set[QuadElem]:
    """All roots of p lying in Q(sqrt d)."""
    return set(quad_root_search(p, d).roots)


def quad_roots_search(p: Poly, d: int | None = None) -> set[QuadElem]:
    """Same contract as ``quad_roots`` via a bounded exhaustive search.

    Quadratic factors a2 x^2 + a1 x + a0 of the primitive integer norm
    polynomial satisfy a2 | lead, a0 | constant and |a1| <= 2*C*a2 for the
    Cauchy bound C. Practical only for small coefficients.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    d = _field_d(p, d)
    n_int, _ = clear_denominators(norm_polynomial(p))
    roots = {QuadElem(r, 0, d) for r in rational_roots(n_int) if evaluate(p, r) == 0}
    cs = list(n_int.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    reduced = Poly(cs)
    if reduced.degree < 2:
        return roots
    lead, c0 = abs(reduced.lead), abs(reduced.coeffs[0])
    cauchy = 1 + Fraction(max(abs(c) for c in cs[:-1]), lead)
    for a2 in _divisors(lead):
        span = math.floor(2 * cauchy * a2)
        for a0_abs in _divisors(c0):
            for a0 in (a0_abs, -a0_abs):
                for a1 in range(-span, span + 1):
                    cands = _quadratic_roots_in_field(a2, a1, a0, d)
                    if not cands:
                        continue
                    _, rem = divmod_poly(reduced, Poly((a0, a1, a2)))
                    if not rem.is_zero():
                        continue
                    roots.update(r for r in cands if evaluate(p, r) == 0)
    return roots


def is_eisenstein(p: Poly, prime: int) -> bool:
    """Eisenstein's criterion at ``prime`` for an integer polynomial."""
    cs = _int_coeffs(p)
    if len(cs) < 2:
        return False
    return (
        cs[-1] % prime != 0
        and all(c % prime == 0 for c in cs[:-1])
        and cs[0] % (prime * prime) != 0
    )


# -- text forms -------------------------------------------------------------


def _coeff_text(c) -> str:
    return format_elem(c) if isinstance(c, QuadElem) else format_rational(c)


def format_poly(p: Poly, var: str = "x") -> str:
    """Descending, space-free, e.g. ``64*x^7-112*x^5+56*x^3-7*x``."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if _is_zero(c):
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        quad = isinstance(c, QuadElem) and c.v != 0
        if quad:
            body = f"({_coeff_text(c)})"
            sign = "+"
        else:
            r = c.u if isinstance(c, QuadElem) else Fraction(c)
            sign = "-" if r < 0 else "+"
            body = format_rational(abs(r))
        if mono:
            term = mono if body == "1" else f"{body}*{mono}"
        else:
            term = body
        parts.append((sign, term))
    text = "".join(s + t for s, t in parts)
    return text[1:] if text.startswith("+") else text


_TERM_RE = re.compile(r"([+-]?)(?:\(((?:[^()]|\([^()]*\))*)\)|(\d+(?:/\d+)?))?(?:\*?(x)(?:\^(\d+))?)?")


def parse_poly(text: str, d: int | None = None) -> Poly:
    """Inverse of ``format_poly``; also accepts ascending order and spaces."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Poly()
    coeffs: dict[int, object] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None and m.group(4) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign, paren, rat, var, exp = m.groups()
        if paren is not None:
            c = parse_elem(paren, Field(d) if d is not None else None)
        elif rat is not None:
            c = parse_rational(rat)
        else:
            c = Fraction(1)
        if sign == "-":
            c = -c
        power = 0 if var is None else int(exp) if exp else 1
        coeffs[power] = coeffs.get(power, 0) + c
        pos = m.end()
    top = max(coeffs)
    return Poly(coeffs.get(i, 0) for i in range(top + 1))


def poly_to_json(p: Poly) -> str:
    return json.dumps([_coeff_text(c) for c in p.coeffs])


def poly_from_json(text: str | Sequence[str], d: int | None = None) -> Poly:
    items = json.loads(text) if isinstance(text, str) else list(text)
    field = Field(d) if d is not None else None
    return Poly(parse_elem(str(c), field) for c in items)
