from __future__ import annotations

import random

from msect.verify import random_rational, run_suite


def test_quick_suite_passes():
    results = run_suite(seed=1, quick=True)
    assert results and all(r.ok for r in results), [r.line() for r in results if not r.ok]


def test_seeded_generator_is_reproducible():
    a = [random_rational(random.Random(9)) for _ in range(5)]
    b = [random_rational(random.Random(9)) for _ in range(5)]
    assert a == b


def test_generator_hits_prime_powers_and_both_sides_of_one():
    rng = random.Random(0)
    xs = [random_rational(rng) for _ in range(500)]
    assert any(x.denominator % 27 == 0 for x in xs)
    assert any(abs(x) <= 1 for x in xs) and any(abs(x) > 1 for x in xs)
