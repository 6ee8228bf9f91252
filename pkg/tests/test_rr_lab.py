"""Tests for growth-inequality checks and difference-table fits."""

from fractions import Fraction
from math import comb, factorial

import pytest

from gcdbound.ideals import (
    GeomProfile,
    Ideal,
    hilbert_profile,
    ideal_power,
    quotient_dim,
)
from gcdbound.polyalgebra import Poly, parse_poly
from gcdbound.rr_lab import (
    InconsistentProfileError,
    InsufficientDataError,
    check_lemma_h0,
    check_rr_inequality,
    colength_linear,
    detect_exponent,
    difference_table,
    lemma_h0_gap,
    rr_growth_in_m,
)


def coordinate_subspace(nvars, codim):
    return Ideal(nvars, [Poly.variable(nvars, i) for i in range(codim)])


# ---------------------------------------------------------------------------
# colength
# ---------------------------------------------------------------------------

def test_colength_examples():
    assert colength_linear(2, 3) == 6   # 1 + 2 + 3 monomials below degree 3
    assert colength_linear(1, 5) == 5
    assert colength_linear(3, 1) == 1


def test_colength_counts_low_degree_monomials():
    for c in range(1, 5):
        for r in range(1, 8):
            count = sum(comb(j + c - 1, c - 1) for j in range(r))
            assert colength_linear(c, r) == count


def test_colength_asymptotics():
    # |comb(r-1+c, c) - r^c/c!| <= c * r^(c-1), exhaustively
    for c in range(1, 5):
        for r in range(1, 51):
            diff = abs(Fraction(colength_linear(c, r))
                       - Fraction(r ** c, factorial(c)))
            assert diff <= c * r ** (c - 1)


# ---------------------------------------------------------------------------
# section-count lemma
# ---------------------------------------------------------------------------

def test_lemma_examples():
    assert check_lemma_h0(1, 7) and lemma_h0_gap(1, 7) == 0
    assert check_lemma_h0(2, 1) and lemma_h0_gap(2, 1) == 0
    assert check_lemma_h0(3, 2) and lemma_h0_gap(3, 2) == 1


def test_lemma_grid():
    for n in range(1, 7):
        for e in range(1, 21):
            assert check_lemma_h0(n, e)


# ---------------------------------------------------------------------------
# difference tables
# ---------------------------------------------------------------------------

def test_difference_table():
    assert difference_table([1, 3, 6, 10]) == [
        [1, 3, 6, 10], [2, 3, 4], [1, 1], [0]]


def test_detect_exponent_polynomial_data():
    assert detect_exponent([1, 3, 6, 10, 15]) == 2
    assert detect_exponent([4, 7, 10, 13]) == 1
    assert detect_exponent([3, 3, 3, 3]) == 0


# ---------------------------------------------------------------------------
# growth in r
# ---------------------------------------------------------------------------

def test_rr_point_in_p2():
    I = coordinate_subspace(3, 2)
    profile = hilbert_profile(I)
    fit = check_rr_inequality(I, profile, 10, 6)
    assert fit.data == (1, 3, 6, 10, 15, 21)
    assert fit.exponent == 2
    assert fit.leading_exact == Fraction(1, 2) == fit.predicted_exact
    assert not fit.violation


def test_rr_line_in_p3():
    I = coordinate_subspace(4, 2)
    profile = hilbert_profile(I)
    fit = check_rr_inequality(I, profile, 8, 4)
    assert fit.exponent == 2
    assert fit.predicted == 4.0    # m^d * degY / c! = 8/2
    assert not fit.violation
    # the calibrated constant absorbs every residual by construction
    for t, value, pred, resid in fit.rows():
        assert value <= pred + fit.max_residual_ratio * t + 1e-9


def test_rr_insufficient_data():
    I = coordinate_subspace(3, 2)
    profile = hilbert_profile(I)
    with pytest.raises(InsufficientDataError):
        check_rr_inequality(I, profile, 10, 1)


def test_rr_inconsistent_profile():
    I = coordinate_subspace(3, 2)
    wrong = GeomProfile(n=2, d=1, c=1, degY=1)
    with pytest.raises(InconsistentProfileError):
        check_rr_inequality(I, wrong, 10, 5)


def test_rr_saturated_window_detected():
    # m too small: the quotient saturates in r and growth order collapses
    I = coordinate_subspace(3, 2)
    profile = hilbert_profile(I)
    with pytest.raises(InconsistentProfileError):
        check_rr_inequality(I, profile, 3, 6)


# ---------------------------------------------------------------------------
# growth in m
# ---------------------------------------------------------------------------

def test_growth_zero_ideal():
    fit = rr_growth_in_m(Ideal(3, []), 1, 8)
    assert fit.exponent == 2
    assert fit.leading_exact == Fraction(1, 2) == fit.predicted_exact
    assert not fit.violation


def test_growth_twisted_cubic():
    tc = Ideal(4, [parse_poly(s, 4) for s in
                   ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")])
    fit = rr_growth_in_m(tc, 1, 9)
    assert fit.exponent == 1
    assert fit.leading_exact == 3   # Hilbert polynomial 3m + 1
    assert not fit.violation


def test_growth_point_power():
    I = coordinate_subspace(3, 2)
    fit = rr_growth_in_m(I, 2, 9)
    assert fit.exponent == 0
    assert fit.leading_exact == 3
    assert fit.predicted_exact == 3   # colength(2,2) * degY / 0!
    assert not fit.violation


def test_growth_insufficient_window():
    with pytest.raises(InsufficientDataError):
        rr_growth_in_m(Ideal(3, []), 1, 2)


# ---------------------------------------------------------------------------
# linear subvariety oracle
# ---------------------------------------------------------------------------

def linear_quotient_oracle(n, c, r, m):
    d = n - c
    return sum(comb(j + c - 1, c - 1) * comb(m - j + d, d)
               for j in range(r) if m - j >= 0)


@pytest.mark.parametrize("n,c", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_linear_subvariety_combinatorial_oracle(n, c):
    I = coordinate_subspace(n + 1, c)
    for r in range(1, 5):
        P = ideal_power(I, r)
        for m in range(r, 9):
            assert quotient_dim(P, m) == linear_quotient_oracle(n, c, r, m)
