"""Bounded-height density of m-sectable cosines and its decay exponent.

delta_K(m-Sect, [-1,1]; B) is the number of m-sectable cosines of height
<= B divided by the number of all elements of [-1,1] of height <= B. The
numerator is computed two independent ways:

per-element
    decide every a in [-1,1] with H_K(a) <= B.
forward-image
    map every b in [-1,1] with H_K(b) <= R through T_{m_odd} and keep images
    of height <= B. R is a certified preimage radius (``preimage_radius``).

The two agree because every a in the image is a cosine with a root of
T_{m_odd} - a in K, which is constructible over Q(a) and hence (odd degree)
forces a root in Q(a) itself.
"""

from __future__ import annotations

import csv
import functools
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from msect.census import census, coprime_pairs, enumerate_quad
from msect.chebyshev import T
from msect.errors import InconsistencyError
from msect.polynomials import Poly, evaluate
from msect.quadfield import Field, QuadElem, height_k, parse_field
from msect.rationals import RationalLike, format_rational, parse_rational
from msect.sectability import decide_sectable, max_odd_divisor

METHODS = ("per-element", "forward-image")


# -- certified preimage radius ---------------------------------------------


def _monic_scale(f: Poly) -> tuple[int, Fraction]:
    """Smallest lam >= 1 with (lam^d / c) f(y / lam) monic integral; returns (lam, c / lam^d)."""
    cs = [int(c) for c in f.coeffs]
    d, c = len(cs) - 1, cs[-1]
    for lam in range(1, abs(c) + 1):
        if abs(c) % lam:
            continue
        if all((ci * lam ** (d - i)) % c == 0 for i, ci in enumerate(cs[:-1])):
            return lam, Fraction(c, lam**d)
    raise AssertionError("lam = |c| always works")


def _archimedean_constant(f: Poly) -> Fraction:
    """A with max(1,|t|)^d <= A max(1,|f(t)|) for all real t.

    For |t| >= R0 = max(1, 2 sum_{i<d}|c_i| / |c_d|) one has
    |f(t)| >= |t|^d / 2, so A = max(2, R0^d) works.
    """
    cs = [int(c) for c in f.coeffs]
    d = len(cs) - 1
    r0 = max(Fraction(1), Fraction(2 * sum(abs(c) for c in cs[:-1]), abs(cs[-1])))
    return max(Fraction(2), r0**d)


def preimage_height_bound(
    f: Poly, B: RationalLike, degree: int = 1, archimedean_dominant: bool = False
) -> Fraction:
    """Bound on H_K(x)^d valid whenever H_K(f(x)) <= B, for integer f of degree d.

    Write f(x) = kappa * g(lam * x) with g monic integral. Place by place:
    at a non-archimedean v, max(1,|x|_v)^d <= max(1,|f(x)|_v) *
    max(1,|1/kappa|_v) * max(1,|1/lam|_v)^d; at an archimedean v the factor
    is A (1 when |f(t)| >= |t|^d for |t| >= 1, true for Chebyshev
    polynomials). Multiplying over all places of a degree-n field:

        H_K(x)^d <= B * (A * |numerator(kappa)| * lam^d)^n
    """
    if f.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    lam, kappa = _monic_scale(f)
    arch = Fraction(1) if archimedean_dominant else _archimedean_constant(f)
    return Fraction(B) * (arch * abs(kappa.numerator) * lam**f.degree) ** degree


def preimage_radius(f: Poly, B: RationalLike, degree: int = 1, archimedean_dominant: bool = False) -> int:
    """Smallest integer R with R^d >= the bound above, so H_K(x) <= R."""
    bound = preimage_height_bound(f, B, degree, archimedean_dominant)
    d = f.degree
    r = max(1, math.floor(float(bound) ** (1.0 / d)) - 1)
    while Fraction(r) ** d < bound:
        r += 1
    while r > 1 and Fraction(r - 1) ** d >= bound:
        r -= 1
    return r


def chebyshev_radius(m_odd: int, B: RationalLike, field: Field) -> int:
    return preimage_radius(T(m_odd), B, field.degree, archimedean_dominant=True)


# -- m-Sect sets ----------------------------------------------------------


def _height(x) -> Fraction | QuadElem:
    if isinstance(x, QuadElem):
        return height_k(x).value
    return Fraction(max(abs(x.numerator), x.denominator))


def unit_interval_elements(field: Field, B: RationalLike) -> list:
    """Elements of [-1, 1] with height <= B."""
    if field.d is None:
        return [Fraction(p, q) for p, q in coprime_pairs(B) if abs(p) <= q]
    return [x for x in enumerate_quad(field, B, ordered=False) if abs(x) <= 1]


def _decide_chunk(m: int, chunk: list) -> list[bool]:
    return [decide_sectable(a, m).sectable for a in chunk]


def _map_chunks(fn, items: list, shards: int) -> list:
    if shards <= 1 or len(items) < 2 * shards:
        return fn(items)
    size = math.ceil(len(items) / (4 * shards))
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    with ProcessPoolExecutor(max_workers=shards) as pool:
        return [r for part in pool.map(fn, chunks) for r in part]


def msect_set(field: Field, m: int, B: RationalLike, method: str = "forward-image", shards: int = 1) -> dict:
    """m-sectable cosines in the field with height <= B, mapped to their heights."""
    B = Fraction(B)
    if B < 1:
        raise ValueError("B must be >= 1")
    m_odd = max_odd_divisor(m)
    if method == "per-element":
        elems = unit_interval_elements(field, B)
        flags = _map_chunks(functools.partial(_decide_chunk, m), elems, shards)
        return {a: _height(a) for a, ok in zip(elems, flags) if ok}
    if method == "forward-image":
        t = T(m_odd)
        radius = chebyshev_radius(m_odd, B, field)
        out = {}
        for b in unit_interval_elements(field, radius):
            a = evaluate(t, b)
            if isinstance(a, QuadElem) and a.v == 0:
                a = a.u
            if isinstance(a, Fraction) and field.d is not None:
                h = _height(a) ** 2
            else:
                h = _height(a)
            if h <= B:
                out[a] = h
        return out
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def msect_count(
    field: Field, m: int, B: RationalLike, method: str = "forward-image", shards: int = 1
) -> int:
    """|m-Sect ∩ [-1,1] ∩ H^-1[1,B]|; ``method="both"`` cross-checks."""
    if method == "both":
        a = msect_count(field, m, B, "per-element", shards)
        b = msect_count(field, m, B, "forward-image", shards)
        if a != b:
            raise InconsistencyError(
                f"m-Sect count mismatch for {field}, m={m}, B={B}: per-element {a}, forward-image {b}"
            )
        return a
    return len(msect_set(field, m, B, method, shards))


def msect_profile(
    field: Field, m: int, bounds: Iterable[RationalLike], method: str, shards: int = 1
) -> dict[Fraction, int]:
    """Counts at every bound in ``bounds`` from a single run at the largest."""
    bounds = sorted(Fraction(b) for b in bounds)
    if method == "both":
        a = msect_profile(field, m, bounds, "per-element", shards)
        b = msect_profile(field, m, bounds, "forward-image", shards)
        if a != b:
            bad = [x for x in bounds if a[x] != b[x]]
            raise InconsistencyError(f"m-Sect count mismatch for {field}, m={m} at B={bad[0]}")
        return a
    heights = list(msect_set(field, m, bounds[-1], method, shards).values())
    return {b: sum(1 for h in heights if h <= b) for b in bounds}


# -- density records ----------------------------------------------------------


@dataclass(frozen=True)
class DensityRecord:
    field: Field
    m: int
    m_odd: int
    B: Fraction
    numerator: int
    denominator: int

    @property
    def delta(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def delta_float(self) -> float:
        return self.numerator / self.denominator

    def row(self) -> list[str]:
        return [
            self.field.tag,
            str(self.m),
            str(self.m_odd),
            format_rational(self.B, always_slash=True),
            str(self.numerator),
            str(self.denominator),
            format_rational(self.delta, always_slash=True),
            repr(self.delta_float),
        ]


CSV_COLUMNS = ["field", "m", "m_odd", "B", "numerator", "denominator", "delta", "delta_float"]


def density(
    field: Field, m: int, B: RationalLike, method: str = "forward-image", shards: int = 1
) -> DensityRecord:
    B = Fraction(B)
    num = msect_count(field, m, B, method, shards)
    den = census(field, B, shards).in_unit
    if not 0 <= num <= den:
        raise InconsistencyError(f"numerator {num} exceeds denominator {den}")
    return DensityRecord(field, m, max_odd_divisor(m), B, num, den)


def parse_grid(text: str) -> list[Fraction]:
    """``start:end:xF`` (geometric, factor F) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3 or not parts[2].startswith("x"):
            raise ValueError(f"grid must look like start:end:xfactor, got {text!r}")
        start, end = parse_rational(parts[0]), parse_rational(parts[1])
        factor = parse_rational(parts[2][1:])
        if start < 1 or factor <= 1 or end < start:
            raise ValueError(f"bad grid {text!r}")
        out = []
        b = start
        while b <= end:
            out.append(b)
            b *= factor
        return out
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def density_grid(
    field: Field, m: int, grid: Iterable[RationalLike], method: str = "forward-image", shards: int = 1
) -> list[DensityRecord]:
    grid = sorted(Fraction(b) for b in grid)
    counts = msect_profile(field, m, grid, method, shards)
    records = []
    for b in grid:
        den = census(field, b, shards).in_unit
        records.append(DensityRecord(field, m, max_odd_divisor(m), b, counts[b], den))
    return records


def write_density_csv(records: Iterable[DensityRecord], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.row())


def read_density_csv(source: str | Path | TextIO) -> list[DensityRecord]:
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return read_density_csv(io.StringIO(fh.read()))
    records = []
    for row in csv.DictReader(source):
        rec = DensityRecord(
            parse_field(row["field"]),
            int(row["m"]),
            int(row["m_odd"]),
            parse_rational(row["B"]),
            int(row["numerator"]),
            int(row["denominator"]),
        )
        if "delta" in row and parse_rational(row["delta"]) != rec.delta:
            raise ValueError(f"inconsistent delta in row {row}")
        records.append(rec)
    return records


# -- decay fit -----------------------------------------------------------------


class NoFitError(ValueError):
    pass


@dataclass(frozen=True)
class DecayFit:
    records: list[DensityRecord]
    fitted_slope: float
    theoretical_slope: float
    intercept: float
    points_used: int

    @property
    def gap(self) -> float:
        return self.fitted_slope - self.theoretical_slope

    def to_dict(self) -> dict:
        return {
            "fitted_slope": self.fitted_slope,
            "theoretical_slope": self.theoretical_slope,
            "intercept": self.intercept,
            "points_used": self.points_used,
            "gap": self.gap,
        }


def fit_records(records: list[DensityRecord]) -> DecayFit:
    """Least-squares slope of log(delta) against log(B), nonzero numerators only."""
    used = [r for r in records if r.numerator > 0]
    if not used:
        raise NoFitError("all numerators are zero")
    if len(used) < 2:
        raise NoFitError("need at least two records with nonzero numerator")
    m_odds = {r.m_odd for r in records}
    if len(m_odds) != 1:
        raise NoFitError(f"records mix m_odd values {sorted(m_odds)}")
    xs = np.log([float(r.B) for r in used])
    ys = np.log([r.delta_float for r in used])
    slope, intercept = np.polyfit(xs, ys, 1)
    m_odd = m_odds.pop()
    return DecayFit(list(records), float(slope), 2 / m_odd - 2, float(intercept), len(used))


def decay_fit(
    field: Field, m: int, grid: Iterable[RationalLike], method: str = "forward-image", shards: int = 1
) -> DecayFit:
    grid = sorted(Fraction(b) for b in grid)
    if len(grid) < 4:
        raise ValueError("decay fit needs at least 4 grid points")
    ratios = {b2 / b1 for b1, b2 in zip(grid, grid[1:])}
    if len(ratios) != 1:
        raise ValueError("decay fit needs a geometric grid")
    if grid[-1] < 256:
        raise ValueError("decay fit needs a largest bound >= 256")
    return fit_records(density_grid(field, m, grid, method, shards))


def plot_fit(fit: DecayFit, path: str | Path) -> None:
    """Static log-log chart of delta against B with the fitted line."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    used = [r for r in fit.records if r.numerator > 0]
    bs = np.array([float(r.B) for r in used])
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(bs, [r.delta_float for r in used], "o", label="delta")
    ax.loglog(bs, np.exp(fit.intercept) * bs**fit.fitted_slope, "-",
              label=f"fit slope {fit.fitted_slope:.3f}")
    ax.set_xlabel("B")
    ax.set_ylabel("density")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
