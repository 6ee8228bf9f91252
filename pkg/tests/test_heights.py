"""Tests for projective points, Weil heights and GCD heights."""

import math
import random
from fractions import Fraction

import pytest

from gcdbound.heights import (
    HeightError,
    factorize,
    gcd_height,
    is_probable_prime,
    normalize_point,
    valuation,
    weil_height,
)
from gcdbound.ideals import Ideal, ideal_from_text
from gcdbound.polyalgebra import parse_poly

DIAGONAL = ideal_from_text("nvars = 3\nx0 - x1\nx1 - x2\n")


# ---------------------------------------------------------------------------
# factorization stack
# ---------------------------------------------------------------------------

def test_factorize_small_exhaustive():
    for n in range(1, 2000):
        fac = factorize(n)
        prod = 1
        for p, e in fac:
            assert is_probable_prime(p)
            prod *= p ** e
        assert prod == n
        assert fac == sorted(fac)


def test_factorize_large_semiprime():
    p, q = 2 ** 31 - 1, 2 ** 61 - 1
    assert factorize(p * q) == [(p, 1), (q, 1)]


def test_factorize_prime_power():
    assert factorize(3 ** 20) == [(3, 20)]


def test_factorize_rejects_nonpositive():
    with pytest.raises(HeightError):
        factorize(0)


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(48, 3) == 1
    assert valuation(-8, 2) == 3
    assert valuation(7, 2) == 0
    with pytest.raises(HeightError):
        valuation(0, 2)


def test_miller_rabin_agrees_with_trial_division():
    def slow_prime(n):
        if n < 2:
            return False
        return all(n % d for d in range(2, int(n ** 0.5) + 1))
    for n in range(1, 3000):
        assert is_probable_prime(n) == slow_prime(n)


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

def test_normalize_examples():
    assert normalize_point((4, 2, 6)) == (2, 1, 3)
    assert normalize_point((-1, 0)) == (1, 0)
    assert normalize_point((Fraction(1, 2), Fraction(1, 3))) == (3, 2)


def test_normalize_idempotent():
    rng = random.Random(8)
    for _ in range(100):
        raw = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 9))
                    for _ in range(3))
        if not any(raw):
            continue
        pt = normalize_point(raw)
        assert normalize_point(pt) == pt
        assert math.gcd(*pt) == 1


def test_normalize_rejects_zero():
    with pytest.raises(HeightError):
        normalize_point((0, 0, 0))


def test_weil_examples():
    assert weil_height((2, 1, 3)) == math.log(3)
    assert weil_height((1, 0, 0)) == 0.0
    assert weil_height((5, 3)) == math.log(5)


# ---------------------------------------------------------------------------
# gcd heights
# ---------------------------------------------------------------------------

def test_gcd_height_diagonal_examples():
    b = gcd_height((5, 3, 1), DIAGONAL)
    assert not b.vanishing_flag
    assert abs(b.gcd_finite - math.log(2)) < 1e-12

    b2 = gcd_height((1, 1, 2), DIAGONAL)
    assert b2.gcd_finite == 0.0
    assert not b2.vanishing_flag

    b3 = gcd_height((1, 1, 1), DIAGONAL)
    assert b3.vanishing_flag
    assert b3.gcd_total == math.inf


def test_breakdown_parts_nonnegative_and_consistent():
    rng = random.Random(12)
    for _ in range(100):
        pt = normalize_point(tuple(rng.randint(-30, 30) for _ in range(3))
                             if rng.random() > 0.01 else (1, 1, 0))
        b = gcd_height(pt, DIAGONAL)
        if b.vanishing_flag:
            continue
        assert b.gcd_finite >= 0.0
        assert b.gcd_arch >= 0.0
        assert b.gcd_total == b.gcd_finite + b.gcd_arch


def test_scaling_invariance():
    rng = random.Random(55)
    for _ in range(100):
        raw = tuple(rng.randint(-40, 40) for _ in range(3))
        if not any(raw):
            continue
        lam = Fraction(rng.choice([1, 2, 3, -5, 7]), rng.choice([1, 2, 3]))
        pt1 = normalize_point(raw)
        pt2 = normalize_point(tuple(lam * c for c in raw))
        assert pt1 == pt2
        assert weil_height(pt1) == weil_height(pt2)
        assert gcd_height(pt1, DIAGONAL) == gcd_height(pt2, DIAGONAL)


def test_generator_permutation_invariance():
    perm = ideal_from_text("nvars = 3\nx1 - x2\nx0 - x1\n")
    rng = random.Random(56)
    for _ in range(100):
        raw = tuple(rng.randint(-40, 40) for _ in range(3))
        if not any(raw):
            continue
        pt = normalize_point(raw)
        assert gcd_height(pt, DIAGONAL) == gcd_height(pt, perm)


def test_finite_part_bounded_by_log_gcd():
    rng = random.Random(57)
    for _ in range(200):
        raw = tuple(rng.randint(-50, 50) for _ in range(3))
        if not any(raw):
            continue
        pt = normalize_point(raw)
        vals = [pt[0] - pt[1], pt[1] - pt[2]]
        nz = [abs(v) for v in vals if v]
        if not nz:
            continue
        g = math.gcd(*nz) if len(nz) > 1 else nz[0]
        b = gcd_height(pt, DIAGONAL)
        if g > 1:
            assert b.gcd_finite <= math.log(g) + 1e-9
        else:
            assert b.gcd_finite == 0.0


def test_single_generator_finite_part_is_log_value():
    I = ideal_from_text("nvars = 2\nx0 - x1\n")
    for pt in [(5, 3), (7, 1), (11, 4), (9, 2)]:
        b = gcd_height(pt, I)
        v = abs(pt[0] - pt[1])
        assert abs(b.gcd_finite - math.log(v)) < 1e-9 or (v == 1 and
                                                          b.gcd_finite == 0)


def test_generator_scaling_shifts_finite_part_boundedly():
    rng = random.Random(58)
    for lam in (2, 3, 6, -5, 10):
        scaled = Ideal(3, [parse_poly(f"{lam}*x0 - {lam}*x1", 3),
                           parse_poly("x1 - x2", 3)])
        for _ in range(40):
            raw = tuple(rng.randint(-30, 30) for _ in range(3))
            if not any(raw):
                continue
            pt = normalize_point(raw)
            a = gcd_height(pt, DIAGONAL)
            b = gcd_height(pt, scaled)
            if a.vanishing_flag:
                assert b.vanishing_flag
                continue
            shift = abs(b.gcd_finite - a.gcd_finite)
            assert shift <= math.log(abs(lam)) + 1e-9


def test_rational_coefficients_cleared():
    I = Ideal(3, [parse_poly("1/2*x0 - 1/2*x1", 3),
                  parse_poly("x1 - x2", 3)])
    b = gcd_height((5, 3, 1), I)
    # 1/2 clears to x0 - x1: same values as the integer presentation
    assert b == gcd_height((5, 3, 1), DIAGONAL)
