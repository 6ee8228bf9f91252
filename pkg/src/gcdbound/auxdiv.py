"""Auxiliary divisor search: the constructive core of the height bound.

A certificate is an explicit degree-m form F vanishing to order at least r
along Y; its slope m/r bounds the GCD height of points away from {F = 0}.
Existence at a given (m, r) is decided by a dimension count (more degree-m
forms than the quotient can absorb), the witness form is the canonical first
basis vector of the graded slice, and verification recomputes everything
from scratch through Groebner membership.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, sqrt

from . import __version__ as _TOOLKIT_VERSION
from .ideals import (
    Ideal,
    IdealError,
    hilbert_profile,
    ideal_power,
    membership,
    quotient_dim,
    slice_echelon,
)
from .polyalgebra import Poly, parse_poly


class AuxDivError(IdealError):
    pass


class InvalidProfileError(AuxDivError):
    pass


class BudgetExhaustedError(AuxDivError):
    """No (m, r) in the search box admits a section; carries diagnostics."""

    def __init__(self, message, r_budget, m_budget):
        super().__init__(message)
        self.r_budget = r_budget
        self.m_budget = m_budget


class CertificateFormatError(AuxDivError):
    """Certificate JSON is structurally unusable."""


def bound_coefficient(profile):
    """The slope bound (degY * n!/c!)^(1/c).

    The radicand is computed as an exact integer before the single root is
    taken; requires codimension >= 2 (points off a divisor are not
    constrained this way) and multiplicity one.
    """
    if profile.c < 2:
        raise InvalidProfileError(
            f"codimension {profile.c} < 2: the slope bound needs c >= 2")
    if profile.degY < 1 or profile.eY != 1:
        raise InvalidProfileError("profile out of range")
    radicand = profile.degY * (factorial(profile.n) // factorial(profile.c))
    if profile.c == 2:
        return sqrt(radicand)
    return radicand ** (1.0 / profile.c)


def dimension_criterion(I, m, r):
    """True iff there are more degree-m forms than the quotient by the r-th
    power can hold, i.e. a nonzero section vanishing to order >= r exists."""
    if m < 1 or r < 1:
        raise AuxDivError("m and r must be >= 1")
    n = I.nvars - 1
    return comb(n + m, n) > quotient_dim(ideal_power(I, r), m)


def find_section(I, m, r):
    """Canonical nonzero degree-m element of the r-th power, or None.

    Returns the reduced first basis vector of the graded slice (largest
    leading monomial, fully back-substituted against the other pivots),
    scaled to primitive integer coefficients with positive leading one;
    deterministic and independent of generator enumeration order.
    """
    if m < 1 or r < 1:
        raise AuxDivError("m and r must be >= 1")
    power = ideal_power(I, r)
    rows, pivot_cols, monomials = slice_echelon(power, m)
    if not rows:
        return None
    first = list(rows[0])
    # back-substitute the later pivots out of the first row
    for k in range(1, len(rows)):
        c = pivot_cols[k]
        if first[c]:
            a, b = rows[k][c], first[c]
            first = [a * x - b * y for x, y in zip(first, rows[k])]
    terms = {mono: Fraction(coef)
             for mono, coef in zip(monomials, first) if coef}
    return Poly(I.nvars, terms).primitive_integer()


@dataclass(frozen=True)
class Certificate:
    """A verified witness (Y, m, r, F) for the slope m/r.

    `ideal` keeps the generator presentation of Y verbatim; `coefficient`
    is the theoretical slope bound of the profile, carried along so reports
    can compare the achieved slope against it.
    """

    ideal: Ideal
    m: int
    r: int
    F: Poly
    coefficient: float

    @property
    def nvars(self):
        return self.ideal.nvars

    @property
    def n(self):
        return self.ideal.nvars - 1

    @property
    def slope(self):
        return Fraction(self.m, self.r)

    def within_epsilon(self, epsilon):
        return float(self.slope) <= self.coefficient + epsilon


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    diagnostics: tuple

    def __bool__(self):
        return self.ok


def verify_certificate(cert):
    """Re-check a certificate from scratch: F nonzero, homogeneous of degree
    m, and a Groebner-certified member of the r-th power of the ideal.
    Nothing cached on the certificate's ideal is trusted."""
    diagnostics = []
    if cert.m < 1 or cert.r < 1:
        diagnostics.append(f"bad exponents m={cert.m}, r={cert.r}")
    if not cert.F:
        diagnostics.append("zero polynomial")
    else:
        if not cert.F.is_homogeneous():
            diagnostics.append("F is not homogeneous")
        elif cert.F.degree() != cert.m:
            diagnostics.append(
                f"degree mismatch: deg F = {cert.F.degree()}, m = {cert.m}")
    if not diagnostics:
        fresh = Ideal(cert.ideal.nvars, cert.ideal.generators)
        power = ideal_power(fresh, cert.r)
        if not membership(cert.F, power):
            diagnostics.append("membership fails: F is not in the r-th power")
    return CertificateCheck(ok=not diagnostics, diagnostics=tuple(diagnostics))


def search_certificate(I, epsilon, r_budget, m_budget):
    """Scan the (m, r) budget box for the cheapest slope.

    For each r the minimal m with a section is found by ascending scan (the
    criterion is monotone in m), the certificate with the smallest slope m/r
    is returned, ties broken toward smaller r.  Raises BudgetExhaustedError
    when no cell in the box admits a section.
    """
    if epsilon <= 0:
        raise AuxDivError("epsilon must be positive")
    if r_budget < 1 or m_budget < 1:
        raise BudgetExhaustedError("empty search box", r_budget, m_budget)
    profile = hilbert_profile(I)
    coefficient = bound_coefficient(profile)
    best = None
    for r in range(1, r_budget + 1):
        for m in range(1, m_budget + 1):
            if dimension_criterion(I, m, r):
                slope = Fraction(m, r)
                if best is None or slope < best[0]:
                    best = (slope, r, m)
                break
    if best is None:
        raise BudgetExhaustedError(
            f"no section found for r <= {r_budget}, m <= {m_budget}",
            r_budget, m_budget)
    _, r, m = best
    F = find_section(I, m, r)
    if F is None:
        raise AuxDivError("criterion and section extraction disagree")
    return Certificate(ideal=I, m=m, r=r, F=F, coefficient=coefficient)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def certificate_to_json(cert, created_by="gcdbound"):
    """Canonical JSON text; byte-stable for identical certificates."""
    payload = {
        "nvars": cert.nvars,
        "generators": [g.to_str() for g in cert.ideal.generators],
        "m": cert.m,
        "r": cert.r,
        "F": cert.F.to_str(),
        "slope": [cert.m, cert.r],
        "coefficient": f"{cert.coefficient:.12g}",
        "created_by": created_by,
        "toolkit_version": _TOOLKIT_VERSION,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def certificate_from_json(text):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"bad JSON: {exc}") from exc
    try:
        nvars = int(payload["nvars"])
        gens = [parse_poly(s, nvars) for s in payload["generators"]]
        m = int(payload["m"])
        r = int(payload["r"])
        F = parse_poly(payload["F"], nvars)
        coefficient = float(payload["coefficient"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"bad certificate payload: {exc}") from exc
    slope = payload.get("slope")
    if slope is not None and list(slope) != [m, r]:
        raise CertificateFormatError("slope field disagrees with m, r")
    return Certificate(ideal=Ideal(nvars, gens), m=m, r=r, F=F,
                       coefficient=coefficient)


def certificate_digest(cert):
    """sha256 of the canonical JSON with provenance fields held fixed."""
    return hashlib.sha256(
        certificate_to_json(cert).encode("utf-8")).hexdigest()


def save_certificate(cert, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(certificate_to_json(cert))


def load_certificate(path):
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_json(fh.read())
