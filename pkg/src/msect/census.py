"""Exact enumeration of field elements of bounded height.

Over Q the set H^-1[1, B] is {p/q : gcd(p, q) = 1, q >= 1, max(|p|, q) <= B}.

Over K = Q(sqrt d) the height is the relative one, H_K(x) = H_Q(x)^2 for
rational x. A properly quadratic x with primitive minimal polynomial
c2 X^2 + c1 X + c0 has H_K(x) = M = c2 max(1,|x|) max(1,|x'|), and

    c2 <= M,   |c0| = c2 |x x'| <= M,   |c1| = c2 |x + x'| <= 2 M,

so H_K(x) <= B forces 1 <= c2 <= B, |c1| <= 2B, |c0| <= B. The roots lie in K
exactly when the discriminant c1^2 - 4 c2 c0 equals d k^2 for an integer
k >= 1 (d is squarefree, so a rational k is an integer). The sweep runs over
(c2, c1, k) with one extra unit on the c2 and c1 ranges, solves for c0, and
keeps primitive triples whose exact height is <= B. Every quadratic element
of height <= B therefore appears, once per conjugate.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from typing import Iterator

from msect.errors import InconsistencyError
from msect.quadfield import QQ, Field, QuadElem, height_k
from msect.rationals import RationalLike, height_q

SIX_OVER_PI2 = 6 / math.pi**2
TWELVE_OVER_PI2 = 12 / math.pi**2


def _int_bound(B: RationalLike) -> int:
    B = Fraction(B)
    if B < 1:
        raise ValueError("height bound B must be >= 1")
    return math.floor(B)


def coprime_pairs(B: RationalLike, shard: int = 0, shards: int = 1) -> Iterator[tuple[int, int]]:
    """(p, q) with q >= 1, gcd(|p|, q) = 1, max(|p|, q) <= B.

    Shards split by denominator: shard i gets q = i + 1 (mod shards).
    """
    n = _int_bound(B)
    gcd = math.gcd
    for q in range(1 + shard, n + 1, shards):
        if q == 1:
            yield (0, 1)
        for p in range(1, n + 1):
            if gcd(p, q) == 1:
                yield (p, q)
                yield (-p, q)


def enumerate_q(B: RationalLike) -> list[Fraction]:
    """Rationals of height <= B, ordered by (height, value)."""
    out = [Fraction(p, q) for p, q in coprime_pairs(B)]
    out.sort(key=lambda x: (max(abs(x.numerator), x.denominator), x))
    return out


def _compare_keyed(a, b) -> int:
    (ha, xa), (hb, xb) = a, b
    if ha != hb:
        return -1 if ha < hb else 1
    if xa == xb:
        return 0
    return -1 if xa < xb else 1


def _sqrt_d_le(k: int, d: int, t: Fraction) -> bool:
    """k*sqrt(d) <= t, exactly (k >= 0)."""
    return t >= 0 and d * k * k <= t * t


def _height_le(c2: int, c1: int, c0: int, k: int, d: int, B: Fraction) -> bool:
    """H_K <= B for the roots (-c1 +- k sqrt d) / (2 c2), in integers.

    The root magnitudes are (|c1| + k sqrt d) / (2 c2) and
    ||c1| - k sqrt d| / (2 c2).
    """
    a = abs(c1)
    big_gt_one = not _sqrt_d_le(k, d, Fraction(2 * c2 - a))
    small_gt_one = (not _sqrt_d_le(k, d, Fraction(a + 2 * c2))) or (
        a - 2 * c2 > 0 and d * k * k < (a - 2 * c2) ** 2
    )
    if small_gt_one:
        return abs(c0) <= B
    if big_gt_one:
        # c2 * |big root| = (|c1| + k sqrt d) / 2
        return _sqrt_d_le(k, d, 2 * B - a)
    return c2 <= B


def _quadratic_sweep(d: int, B: Fraction, c2_values) -> list[tuple[int, int, int]]:
    """(c2, c1, k) for every primitive minimal polynomial of height <= B."""
    n = math.floor(B)
    out = []
    for c2 in c2_values:
        four_c2 = 4 * c2
        for c1 in range(-2 * n - 1, 2 * n + 2):
            # |c0| <= n  <=>  c1^2 - 4 c2 n <= d k^2 <= c1^2 + 4 c2 n
            sq = c1 * c1
            lo = sq - four_c2 * (n + 1)
            hi = sq + four_c2 * (n + 1)
            k = max(1, math.isqrt(max(lo, 0) // d))
            while d * k * k <= hi:
                num = sq - d * k * k
                if num % four_c2 == 0:
                    c0 = num // four_c2
                    if math.gcd(c2, c1, c0) == 1 and _height_le(c2, c1, c0, k, d, B):
                        out.append((c2, c1, k))
                k += 1
    return out


def enumerate_quad(field: Field, B: RationalLike, shards: int = 1, ordered: bool = True) -> list[QuadElem]:
    """Elements x of Q(sqrt d) with H_K(x) <= B, ordered by (height, value)."""
    if field.d is None:
        raise ValueError("enumerate_quad needs a quadratic field")
    B = Fraction(B)
    n = _int_bound(B)
    d = field.d
    h = math.isqrt(n)  # rational x needs H_Q(x)^2 <= B
    out = [QuadElem(r, 0, d) for r in enumerate_q(h)]
    c2_all = list(range(1, n + 2))
    if shards > 1:
        chunks = [c2_all[i::shards] for i in range(shards)]
        with ProcessPoolExecutor(max_workers=shards) as pool:
            triples = [t for part in pool.map(functools.partial(_quadratic_sweep, d, B), chunks) for t in part]
    else:
        triples = _quadratic_sweep(d, B, c2_all)
    for c2, c1, k in triples:
        x = QuadElem(Fraction(-c1, 2 * c2), Fraction(k, 2 * c2), d)
        out.append(x)
        out.append(x.conj())
    if ordered:
        keyed = [(height_k(x).value, x) for x in out]
        keyed.sort(key=functools.cmp_to_key(_compare_keyed))
        out = [x for _, x in keyed]
    return out


def enumerate_field(field: Field, B: RationalLike, shards: int = 1) -> list:
    if field.d is None:
        return enumerate_q(B)
    return enumerate_quad(field, B, shards)


@dataclass(frozen=True)
class CensusRow:
    field: Field
    B: Fraction
    total: int
    in_unit: int


def _count_q(B: Fraction, shard: int, shards: int) -> tuple[int, int]:
    total = in_unit = 0
    for p, q in coprime_pairs(B, shard, shards):
        total += 1
        if abs(p) <= q:
            in_unit += 1
    return total, in_unit


def census(field: Field, B: RationalLike, shards: int = 1) -> CensusRow:
    """Count H_K^-1[1, B] and its part in [-1, 1].

    The two counts must satisfy in_unit = (total + 3) / 2; a violation means
    the enumeration is wrong and raises ``InconsistencyError``.
    """
    B = Fraction(B)
    _int_bound(B)
    if field.d is None:
        if shards > 1:
            with ProcessPoolExecutor(max_workers=shards) as pool:
                parts = list(pool.map(_count_q, [B] * shards, range(shards), [shards] * shards))
        else:
            parts = [_count_q(B, 0, 1)]
        total = sum(t for t, _ in parts)
        in_unit = sum(u for _, u in parts)
    else:
        elems = enumerate_quad(field, B, shards, ordered=False)
        total = len(elems)
        in_unit = sum(1 for x in elems if abs(x) <= 1)
    if 2 * in_unit != total + 3:
        raise InconsistencyError(
            f"unit-interval identity violated for {field} at B={B}: "
            f"in_unit={in_unit}, total={total}"
        )
    return CensusRow(field, B, total, in_unit)


@dataclass(frozen=True)
class SchanuelFit:
    field: Field
    samples: list[tuple[Fraction, int]]
    s_hat: list[float] = dc_field(default_factory=list)
    drift: float | None = None
    matched_constant: str | None = None
    relative_error: dict = dc_field(default_factory=dict)

    @property
    def estimate(self) -> float:
        return self.s_hat[-1]


def schanuel_fit(field: Field, B_list, shards: int = 1) -> SchanuelFit:
    """Growth constant estimate total / B^2 along an ascending list of bounds.

    ``drift`` compares the last two estimates. Over Q the estimate is checked
    against both 6/pi^2 and 12/pi^2 and the closer one is recorded.
    """
    bounds = [Fraction(b) for b in B_list]
    if not bounds:
        raise ValueError("need at least one bound")
    if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
        raise ValueError("bounds must be strictly ascending")
    samples = [(b, census(field, b, shards).total) for b in bounds]
    s_hat = [t / float(b) ** 2 for b, t in samples]
    drift = abs(s_hat[-1] - s_hat[-2]) / s_hat[-1] if len(s_hat) >= 2 else None
    errors = {
        "6/pi^2": abs(s_hat[-1] - SIX_OVER_PI2) / SIX_OVER_PI2,
        "12/pi^2": abs(s_hat[-1] - TWELVE_OVER_PI2) / TWELVE_OVER_PI2,
    }
    matched = min(errors, key=errors.get) if field == QQ else None
    return SchanuelFit(field, samples, s_hat, drift, matched, errors)


def height(x) -> object:
    """Exact height in the field the element lives in."""
    if isinstance(x, QuadElem):
        return height_k(x)
    return height_q(x)
