"""Exact arithmetic in real quadratic fields Q(sqrt d) and heights there.

Elements are ``QuadElem(u, v, d)`` meaning u + v*sqrt(d) with the positive
square root, so every element is a real number with an exact ordering.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from msect.rationals import (
    HeightValue,
    RationalLike,
    format_rational,
    height_q,
    int_valuation,
    parse_rational,
    prime_divisors,
    valuation,
)


@functools.lru_cache(maxsize=None)
def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


@functools.lru_cache(maxsize=None)
def _check_d(d: int) -> int:
    if not isinstance(d, int) or d < 2 or not is_squarefree(d):
        raise ValueError(f"d={d!r} must be a squarefree integer >= 2")
    return d


@dataclass(frozen=True)
class Field:
    """Q when ``d`` is None, otherwise the real quadratic field Q(sqrt d)."""

    d: int | None = None

    def __post_init__(self) -> None:
        if self.d is not None:
            _check_d(self.d)

    @property
    def kind(self) -> str:
        return "RationalField" if self.d is None else "QuadField"

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    @property
    def tag(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt {self.d})"

    def __str__(self) -> str:
        return self.tag


QQ = Field()

_FIELD_RE = re.compile(r"^Q(?:\(\s*sqrt\s*\(?\s*(\d+)\s*\)?\s*\))?$")


def parse_field(text: str) -> Field:
    """Accepts ``Q``, ``Q(sqrt 2)`` and ``Q(sqrt(2))``."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ValueError(f"unrecognized field {text!r}")
    return QQ if m.group(1) is None else Field(int(m.group(1)))


def _coerce(x, d: int) -> QuadElem:
    if isinstance(x, QuadElem):
        if x.d != d:
            raise ValueError(f"field mismatch: Q(sqrt {x.d}) vs Q(sqrt {d})")
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QuadElem(Fraction(x), Fraction(0), d)
    raise TypeError(f"cannot coerce {x!r} into Q(sqrt {d})")


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class QuadElem:
    u: Fraction
    v: Fraction
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        _check_d(self.d)

    @property
    def field(self) -> Field:
        return Field(self.d)

    def is_rational(self) -> bool:
        return self.v == 0

    def conj(self) -> QuadElem:
        return QuadElem(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    def __neg__(self) -> QuadElem:
        return QuadElem(-self.u, -self.v, self.d)

    def __pos__(self) -> QuadElem:
        return self

    def __add__(self, other):
        try:
            o = _coerce(other, self.d)
        except TypeError:
            return NotImplemented
        return QuadElem(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = _coerce(other, self.d)
        except TypeError:
            return NotImplemented
        return QuadElem(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem(self.u * other, self.v * other, self.d)
        try:
            o = _coerce(other, self.d)
        except TypeError:
            return NotImplemented
        return QuadElem(
            self.u * o.u + self.d * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        return QuadElem(self.u / n, -self.v / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(self.u / other, self.v / other, self.d)
        try:
            o = _coerce(other, self.d)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = _coerce(other, self.d)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadElem:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def cmp_real(self, r: RationalLike) -> int:
        """Exact sign of (self - r) as a real number: -1, 0 or 1."""
        a = self.u - Fraction(r)
        b = self.v
        sa, sb = _sign(a), _sign(b)
        if sa >= 0 and sb >= 0:
            return 1 if (sa or sb) else 0
        if sa <= 0 and sb <= 0:
            return -1
        gap = a * a - b * b * self.d
        return sa * _sign(gap)

    def sign(self) -> int:
        return self.cmp_real(0)

    def __abs__(self) -> QuadElem:
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        o = _coerce(other, self.d)
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadElem):
            return (self.u, self.v, self.d) == (other.u, other.v, other.d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.v == 0 and self.u == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def __float__(self) -> float:
        return float(self.u) + float(self.v) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"QuadElem({format_elem(self)!r})"

    def __str__(self) -> str:
        return format_elem(self)


def sqrt_elem(d: int) -> QuadElem:
    return QuadElem(Fraction(0), Fraction(1), d)


def quad_arith(op: str, x: QuadElem, y: QuadElem | RationalLike | None = None) -> QuadElem:
    """Dispatch by name: add, sub, mul, div, conj."""
    if op == "conj":
        return x.conj()
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def cmp_real(x: QuadElem | RationalLike, r: RationalLike) -> int:
    if isinstance(x, QuadElem):
        return x.cmp_real(r)
    return _sign(Fraction(x) - Fraction(r))


def format_elem(x: QuadElem | RationalLike) -> str:
    if not isinstance(x, QuadElem):
        return format_rational(x)
    if x.v == 0:
        return format_rational(x.u)
    root = f"sqrt({x.d})"
    if abs(x.v) == 1:
        tail = root
    else:
        tail = f"{format_rational(abs(x.v))}*{root}"
    sign = "-" if x.v < 0 else "+"
    if x.u == 0:
        return tail if sign == "+" else "-" + tail
    return f"{format_rational(x.u)}{sign}{tail}"


_RAT = r"\d+(?:/\d+)?"
_ELEM_RE = re.compile(
    rf"^(?P<u>[+-]?{_RAT}(?![*/\d]))?"
    rf"(?:(?P<vs>[+-])?(?:(?P<v>{_RAT})\*)?sqrt\(?(?P<d>\d+)\)?)?$"
)


def parse_elem(text: str, field: Field | None = None) -> QuadElem | Fraction:
    """Parse ``u``, ``u+v*sqrt(d)``, ``-sqrt(2)`` and similar forms.

    Returns a ``Fraction`` when no radical appears and ``field`` is Q or
    absent; otherwise a ``QuadElem`` (in ``field`` when given).
    """
    s = text.replace(" ", "")
    m = _ELEM_RE.match(s)
    if not s or not m or (m.group("u") is None and m.group("d") is None):
        raise ValueError(f"cannot parse field element {text!r}")
    u = parse_rational(m.group("u")) if m.group("u") else Fraction(0)
    if m.group("d") is None:
        if field is None or field.d is None:
            return u
        return QuadElem(u, Fraction(0), field.d)
    if m.group("u") and not m.group("vs"):
        raise ValueError(f"cannot parse field element {text!r}")
    d = int(m.group("d"))
    if field is not None and field.d != d:
        raise ValueError(f"element {text!r} not in {field}")
    v = parse_rational(m.group("v")) if m.group("v") else Fraction(1)
    if m.group("vs") == "-":
        v = -v
    return QuadElem(u, v, d)


def minimal_polynomial(x: QuadElem | RationalLike) -> tuple[int, ...]:
    """Primitive integer minimal polynomial over Q, constant term first,
    positive leading coefficient."""
    if isinstance(x, QuadElem) and x.v != 0:
        coeffs = [x.norm(), -x.trace(), Fraction(1)]
    else:
        r = Fraction(x.u if isinstance(x, QuadElem) else x)
        coeffs = [-r, Fraction(1)]
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    return tuple(c // g for c in ints)


def _as_height(value) -> HeightValue:
    if isinstance(value, QuadElem) and value.v == 0:
        value = value.u
    if isinstance(value, QuadElem):
        return HeightValue(value, float(value))
    return HeightValue(Fraction(value), float(value))


def height_k(x: QuadElem) -> HeightValue:
    """Relative height H_K for K = Q(sqrt d), via the minimal polynomial.

    For rational x this is H_Q(x)^2. Otherwise, with primitive minimal
    polynomial c2 X^2 + c1 X + c0, it is c2 * max(1,|x|) * max(1,|x'|).
    """
    if x.v == 0:
        h = height_q(x.u).value
        return _as_height(h * h)
    c2 = minimal_polynomial(x)[2]
    one = Fraction(1)
    value = max(abs(x), one) * max(abs(x.conj()), one) * c2
    return _as_height(value)


ORACLE_FIELDS = frozenset({2, 3, 5, 7, 13})


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _splitting(p: int, d: int) -> str:
    if p == 2:
        if d % 4 in (2, 3):
            return "ramified"
        return "split" if d % 8 == 1 else "inert"
    if d % p == 0:
        return "ramified"
    return "split" if _legendre(d, p) == 1 else "inert"


def _padic_sqrt(d: int, p: int, k: int) -> int:
    """s with s^2 = d mod p^k, for odd p with d a nonzero square mod p."""
    s = next(t for t in range(1, p) if (t * t - d) % p == 0)
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        s = (s - (s * s - d) * pow(2 * s, -1, mod)) % mod
    return s


@dataclass(frozen=True)
class Place:
    """A place of Q(sqrt d): archimedean (embedding sign) or above prime p."""

    prime: int | None
    weight: int
    embedding: int = 1  # sign of sqrt(d); 0 for inert/ramified places
    kind: str = "archimedean"


def places_above(p: int | None, d: int) -> list[Place]:
    if p is None:
        return [Place(None, 1, 1), Place(None, 1, -1)]
    kind = _splitting(p, d)
    if kind == "split":
        return [Place(p, 1, 1, kind), Place(p, 1, -1, kind)]
    return [Place(p, 2, 0, kind)]


def _place_factor(x: QuadElem, place: Place) -> Fraction:
    """|x|_v ** n_v for a non-archimedean place (x != 0)."""
    p, d = place.prime, x.d
    if place.kind in ("inert", "ramified"):
        return valuation(x.norm(), p).multiplicative_value
    den = math.lcm(x.u.denominator, x.v.denominator)
    U, V = int(x.u * den), int(x.v * den)
    k = int_valuation(U * U - d * V * V, p) + 1
    s = place.embedding * _padic_sqrt(d, p, k)
    w = (U + V * s) % p**k
    e = int_valuation(w, p) - (int_valuation(den, p) if den % p == 0 else 0)
    return Fraction(1, p**e) if e >= 0 else Fraction(p ** (-e))


def places_oracle(x: QuadElem) -> HeightValue:
    """H_K(x) as the literal product of sup{1, |x|_v^{n_v}} over all places.

    Only for d in ``ORACLE_FIELDS``; this is a validation route for
    ``height_k``.
    """
    if x.d not in ORACLE_FIELDS:
        raise ValueError(f"places oracle supports d in {sorted(ORACLE_FIELDS)}")
    one = Fraction(1)
    value: QuadElem | Fraction = max(abs(x), one) * max(abs(x.conj()), one)
    if x.u == 0 and x.v == 0:
        return _as_height(value)
    n = x.norm()
    den = math.lcm(x.u.denominator, x.v.denominator)
    primes = set(prime_divisors(den)) | set(prime_divisors(n.numerator)) | set(prime_divisors(n.denominator))
    for p in sorted(primes):
        for place in places_above(p, x.d):
            value = value * max(one, _place_factor(x, place))
    return _as_height(value)
