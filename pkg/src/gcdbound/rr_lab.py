"""Numeric checks of the dimension-growth inequalities behind the bound.

Growth exponents and leading coefficients are read off exact finite
difference tables of exact integer dimension sequences; nothing is fitted by
least squares.  The detected exponent is the deepest difference row that is
still entirely positive, which is the right notion for these eventually
polynomial, eventually convex counting sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .ideals import (
    GeomProfile,
    IdealError,
    hilbert_profile,
    ideal_power,
    quotient_dim,
)


class RRLabError(IdealError):
    pass


class InsufficientDataError(RRLabError):
    pass


class InconsistentProfileError(RRLabError):
    """Detected growth exponent disagrees with the geometric profile."""


def colength_linear(c, r):
    """Length of the local quotient ring at the generic point of a linear
    subvariety of codimension c, truncated at order r: the number of
    monomials in c variables of total degree below r."""
    if c < 1 or r < 1:
        raise RRLabError("colength_linear needs c >= 1 and r >= 1")
    return comb(r - 1 + c, c)


def check_lemma_h0(n, e):
    """Section-count inequality comb(n+e, n) <= e^n + n for degree-e forms
    on projective n-space."""
    if n < 1 or e < 1:
        raise RRLabError("check_lemma_h0 needs n >= 1 and e >= 1")
    return comb(n + e, n) <= e ** n + n


def lemma_h0_gap(n, e):
    """Slack of the section-count inequality; zero exactly on the equality
    locus."""
    return e ** n + n - comb(n + e, n)


# ---------------------------------------------------------------------------
# difference tables
# ---------------------------------------------------------------------------

def difference_table(values):
    """Rows of forward differences, row 0 being the data itself."""
    rows = [list(values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([b - a for a, b in zip(prev, prev[1:])])
    return rows


def detect_exponent(values):
    """Largest k such that difference rows 0..k are all strictly positive.

    For an exactly polynomial positive sequence of degree k with positive
    differences this returns k; for counting sequences that are polynomial
    only asymptotically it returns the order of the dominant growth visible
    in the window.
    """
    rows = difference_table(values)
    e = -1
    for k, row in enumerate(rows):
        if row and all(x > 0 for x in row):
            e = k
        else:
            break
    if e < 0:
        raise InsufficientDataError("sequence is not positive")
    return e


def _leading(values, exponent):
    rows = difference_table(values)
    if exponent >= len(rows) or not rows[exponent]:
        raise InsufficientDataError(
            f"need at least {exponent + 1} data points")
    return Fraction(rows[exponent][-1], factorial(exponent))


@dataclass(frozen=True)
class AsymptoticFit:
    """Exact-difference fit of a dimension sequence against its predicted
    leading term.  `grid` holds the sampled variable values (r or m),
    `data` the computed dimensions; `max_residual_ratio` is the calibrated
    constant K with data <= predicted * t^exponent + K * t^(exponent-1)."""

    variable: str
    exponent: int
    leading: float
    predicted: float
    max_residual_ratio: float
    violation: bool
    grid: tuple = field(repr=False)
    data: tuple = field(repr=False)
    leading_exact: Fraction = field(repr=False)
    predicted_exact: Fraction = field(repr=False)

    def rows(self):
        """(t, computed_dim, predicted_leading_term, residual) table rows."""
        out = []
        for t, v in zip(self.grid, self.data):
            pred = self.predicted_exact * Fraction(t) ** self.exponent
            out.append((t, v, float(pred), float(v - pred)))
        return out


def _calibrate(grid, data, predicted_exact, exponent):
    ratios = []
    for t, v in zip(grid, data):
        resid = v - predicted_exact * Fraction(t) ** exponent
        ratios.append(resid / Fraction(t) ** max(exponent - 1, 0))
    K = max(ratios)
    violation = any(
        v > predicted_exact * Fraction(t) ** exponent
        + K * Fraction(t) ** max(exponent - 1, 0)
        for t, v in zip(grid, data))
    return K, violation


def check_rr_inequality(I, profile, m, r_max):
    """Growth in the vanishing order r at fixed twist m.

    Computes the quotient dimensions for r = 1..r_max, checks the detected
    exponent equals the codimension c, extracts the leading coefficient from
    the c-th difference row and calibrates the O(r^(c-1)) constant against
    predicted = m^d * degY / c!.
    """
    if r_max < 2:
        raise InsufficientDataError("r_max must be at least 2")
    c, d = profile.c, profile.d
    if r_max < c + 1:
        raise InsufficientDataError(
            f"r_max = {r_max} cannot resolve growth of order {c}")
    grid = tuple(range(1, r_max + 1))
    data = tuple(quotient_dim(ideal_power(I, r), m) for r in grid)
    exponent = detect_exponent(data)
    if exponent != c:
        raise InconsistentProfileError(
            f"growth exponent {exponent} in r disagrees with codimension {c}")
    leading_exact = _leading(data, c)
    predicted_exact = Fraction(m ** d * profile.degY * profile.eY,
                               factorial(c))
    K, violation = _calibrate(grid, data, predicted_exact, c)
    return AsymptoticFit(
        variable="r", exponent=exponent, leading=float(leading_exact),
        predicted=float(predicted_exact), max_residual_ratio=float(K),
        violation=violation, grid=grid, data=data,
        leading_exact=leading_exact, predicted_exact=predicted_exact)


def rr_growth_in_m(I, r, m_max, profile=None, m_start=None):
    """Growth in the twist m at fixed vanishing order r.

    For the zero ideal the sequence is the full section count (exponent n,
    leading 1/n!); otherwise the exponent must match dim Y and the predicted
    leading term is colength * degY / d! with the multiplicity-one linear
    colength model (exact for linear subvarieties and for r = 1).
    """
    if profile is None:
        if I.is_zero:
            n = I.nvars - 1
            profile = GeomProfile(n=n, d=n, c=0, degY=1, eY=1)
        else:
            profile = hilbert_profile(I)
    d = profile.d
    if m_max < d + 3:
        raise InsufficientDataError("m_max must be at least dim Y + 3")
    if m_start is None:
        m_start = max(1, I.max_generator_degree() * r)
    if m_max - m_start < d + 1:
        raise InsufficientDataError("window too short for the expected degree")
    power = ideal_power(I, r)
    grid = tuple(range(m_start, m_max + 1))
    data = tuple(quotient_dim(power, m) for m in grid)
    exponent = detect_exponent(data)
    if exponent != d:
        raise InconsistentProfileError(
            f"growth exponent {exponent} in m disagrees with dimension {d}")
    leading_exact = _leading(data, d)
    length = comb(r - 1 + profile.c, profile.c) if profile.c else 1
    predicted_exact = Fraction(length * profile.degY, factorial(d))
    K, violation = _calibrate(grid, data, predicted_exact, d)
    return AsymptoticFit(
        variable="m", exponent=exponent, leading=float(leading_exact),
        predicted=float(predicted_exact), max_residual_ratio=float(K),
        violation=violation, grid=grid, data=data,
        leading_exact=leading_exact, predicted_exact=predicted_exact)
