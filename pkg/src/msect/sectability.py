"""Deciding m-sectability of an angle from its cosine.

An angle with cosine a is m-sectable exactly when T_{m_odd}(x) - a has a
root in Q(a), m_odd being the largest odd divisor of m. Cosines are taken
from Q or from a real quadratic field; when a quadratic element happens to
be rational, the ground field is Q.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from msect.chebyshev import T
from msect.polynomials import (
    clear_denominators,
    evaluate,
    quad_root_search,
    rational_root_search,
)
from msect.quadfield import QuadElem, format_elem
from msect.rationals import RationalLike, valuation


def max_odd_divisor(m: int) -> int:
    if m < 1:
        raise ValueError("m must be a positive integer")
    while m % 2 == 0:
        m //= 2
    return m


def is_power_of_two(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


@dataclass(frozen=True)
class SectVerdict:
    a: Fraction | QuadElem
    m: int
    m_odd: int
    sectable: bool
    witness: Fraction | QuadElem | None = None
    certificate: dict | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {
            "a": format_elem(self.a),
            "m": self.m,
            "m_odd": self.m_odd,
            "sectable": self.sectable,
        }
        if isinstance(self.a, QuadElem):
            out["field"] = self.a.field.tag
        if self.witness is not None:
            out["witness"] = format_elem(self.witness)
        out["certificate"] = self.certificate
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _ground(a) -> Fraction | QuadElem:
    if isinstance(a, QuadElem):
        return a.u if a.v == 0 else a
    if isinstance(a, (int, Fraction)) and not isinstance(a, bool):
        return Fraction(a)
    raise TypeError(f"unsupported cosine {a!r}; expected a rational or QuadElem")


def decide_sectable(a: RationalLike | QuadElem, m: int) -> SectVerdict:
    a = _ground(a)
    if abs(a) > 1:
        raise ValueError(f"|a| > 1 is not a cosine: {format_elem(a)}")
    m_odd = max_odd_divisor(m)
    if m_odd == 1:
        return SectVerdict(a, m, 1, True, a)
    p = T(m_odd) - a
    if isinstance(a, Fraction):
        search = rational_root_search(clear_denominators(p)[0])
        roots = search.roots
        cert = {"method": "rational-root-theorem", "candidates": search.candidates}
    else:
        qsearch = quad_root_search(p, a.d)
        roots = qsearch.roots
        cert = {
            "method": "conjugate-norm",
            "norm_degree": 2 * m_odd,
            "rational_candidates": qsearch.rational_candidates,
            "quadratic_factors": qsearch.quadratic_factors,
        }
    if not roots:
        return SectVerdict(a, m, m_odd, False, None, cert)
    witness = min(roots)
    assert evaluate(p, witness) == 0
    return SectVerdict(a, m, m_odd, True, witness)


def witness_family(m: int) -> Fraction:
    """The rational cosine a = T_{m/2}(1/3) for even m not a power of two.

    T_m(sqrt(2/3)) = a, so the angle is m-sectable through a constructible
    root, yet T_m(x) - a has no rational root.
    """
    if m < 2 or m % 2 or is_power_of_two(m):
        raise ValueError(f"m={m} must be even and not a power of two")
    return evaluate(T(m // 2), Fraction(1, 3))


def witness_exponent(m: int) -> int:
    """The 3-adic exponent 2^(k-1) * n of |witness_family(m)|_3, m = 2^k n."""
    k = (m & -m).bit_length() - 1
    return (1 << (k - 1)) * (m >> k)


def witness_report(m: int) -> dict:
    a = witness_family(m)
    nu = valuation(a, 3)
    search = rational_root_search(clear_denominators(T(m) - a)[0])
    verdict = decide_sectable(a, m)
    return {
        "m": m,
        "a": format_elem(a),
        "nu3_exponent": -nu.exponent,
        "nu3_value": str(nu.multiplicative_value),
        "expected_exponent": witness_exponent(m),
        "rational_roots_of_T_m_minus_a": sorted(format_elem(r) for r in search.roots),
        "candidates_eliminated": search.candidates,
        "sectable": verdict.sectable,
        "witness_of_T_m_odd": format_elem(verdict.witness) if verdict.witness is not None else None,
    }


def power_of_two_witness(m: int, a: RationalLike | float) -> list[float]:
    """Half-angle chain [b_k, ..., b_1, b_0 = a] for m = 2^k.

    Each step solves 2x^2 - 1 = c by x = sqrt((1 + c) / 2), so T_m(b_k) = a
    with every b_j constructible from the previous one.
    """
    if not is_power_of_two(m):
        raise ValueError(f"m={m} is not a power of two")
    c = float(a)
    if abs(c) > 1:
        raise ValueError("|a| must be <= 1")
    chain = [c]
    for _ in range(m.bit_length() - 1):
        c = math.sqrt((1.0 + c) / 2.0)
        chain.append(c)
    chain.reverse()
    # float Horner on T_m cancels badly near 1; evaluate exactly at the float b_k
    residual = abs(float(evaluate(T(m), Fraction(chain[0])) - Fraction(a)))
    if residual >= 1e-9:
        raise ArithmeticError(f"half-angle chain residual {residual}")
    return chain
