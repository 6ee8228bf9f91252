"""Homogeneous ideals, their powers, graded dimension counts and profiles.

Two independent routes to the same dimension are kept alive on purpose:
`graded_piece_dim` ranks the multiplication (Macaulay) matrix exactly, while
`quotient_dim_via_standard_monomials` counts monomials outside the Groebner
leading-term ideal.  Tests pin them against each other.

The geometric profile (dimension and degree of the subscheme cut out by an
ideal) is read off the interpolated Hilbert polynomial over a stabilization
window; no saturation is ever computed, instead two consecutive windows must
agree or the extraction refuses.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial

from .polyalgebra import (
    Poly,
    grevlex_key,
    graded_monomials,
    int_row_echelon,
    monomial_div,
    monomial_divides,
    monomial_index,
    monomial_lcm,
    parse_poly,
)


class IdealError(ValueError):
    pass


class IdealFileError(IdealError):
    """Malformed ideal definition file."""


class EmptySubschemeError(IdealError):
    """The ideal cuts out the empty subscheme (all sampled dimensions zero)."""


class WindowInstabilityError(IdealError):
    """Two consecutive interpolation windows produced different Hilbert
    polynomials; the graded pieces have not stabilized yet."""


class Ideal:
    """A homogeneous ideal given by generators, with lazy caches.

    Generators must be nonzero and homogeneous.  The instance is immutable
    apart from write-once caches (Groebner basis, powers, slice dimensions),
    so it is safe to share across threads once constructed.
    """

    __slots__ = ("nvars", "generators", "_gb", "_gb_lock", "_powers", "_dims")

    def __init__(self, nvars, generators):
        generators = tuple(generators)
        for g in generators:
            if not isinstance(g, Poly) or g.nvars != nvars:
                raise IdealError("generator in wrong polynomial ring")
            if not g:
                raise IdealError("zero generator")
            if not g.is_homogeneous():
                raise IdealError(f"generator not homogeneous: {g}")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "_gb", None)
        object.__setattr__(self, "_gb_lock", threading.Lock())
        object.__setattr__(self, "_powers", {})
        object.__setattr__(self, "_dims", {})

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    def __repr__(self):
        gens = ", ".join(g.to_str() for g in self.generators)
        return f"Ideal({self.nvars}; {gens})"

    @property
    def is_zero(self):
        return not self.generators

    def max_generator_degree(self):
        return max((g.degree() for g in self.generators), default=0)

    def groebner(self):
        """Reduced Groebner basis in grevlex order, computed once and cached."""
        if self.is_zero:
            raise IdealError("the zero ideal has no Groebner basis")
        with self._gb_lock:
            if self._gb is None:
                object.__setattr__(self, "_gb",
                                   tuple(groebner_basis(self.generators)))
        return list(self._gb)


def groebner(ideal):
    return ideal.groebner()


# ---------------------------------------------------------------------------
# ideal construction
# ---------------------------------------------------------------------------

def ideal_from_text(text, source="<string>"):
    """Parse an ideal definition: a line "nvars = k" followed by one
    generator per line; '#' starts a comment."""
    nvars = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if nvars is None:
            parts = line.replace(" ", "").split("=")
            if len(parts) != 2 or parts[0] != "nvars":
                raise IdealFileError(
                    f"{source}:{lineno}: expected 'nvars = <k>' first")
            try:
                nvars = int(parts[1])
            except ValueError:
                raise IdealFileError(
                    f"{source}:{lineno}: bad variable count {parts[1]!r}")
            if nvars < 1:
                raise IdealFileError(f"{source}:{lineno}: nvars must be >= 1")
            continue
        try:
            g = parse_poly(line, nvars)
        except ValueError as exc:
            raise IdealFileError(f"{source}:{lineno}: {exc}") from exc
        if not g:
            raise IdealFileError(f"{source}:{lineno}: zero generator")
        if not g.is_homogeneous():
            raise IdealFileError(f"{source}:{lineno}: generator not homogeneous")
        gens.append(g)
    if nvars is None:
        raise IdealFileError(f"{source}: missing 'nvars = <k>' line")
    return Ideal(nvars, gens)


def load_ideal(path):
    with open(path, "r", encoding="utf-8") as fh:
        return ideal_from_text(fh.read(), source=str(path))


def ideal_power(I, r):
    """The r-th power: generated by all r-fold products of generators,
    deduplicated by canonical text.  r = 1 returns I itself."""
    if r < 1:
        raise IdealError("power must be >= 1")
    if r == 1 or I.is_zero:
        return I
    cached = I._powers.get(r)
    if cached is not None:
        return cached
    seen = set()
    gens = []
    for combo in combinations_with_replacement(I.generators, r):
        p = combo[0]
        for q in combo[1:]:
            p = p * q
        key = p.to_str()
        if key not in seen:
            seen.add(key)
            gens.append(p)
    power = Ideal(I.nvars, gens)
    I._powers[r] = power
    return power


# ---------------------------------------------------------------------------
# graded dimension counts (linear-algebra route)
# ---------------------------------------------------------------------------

def _slice_rows(I, m):
    """Integer coefficient rows of all products g * mu of degree m, sorted so
    elimination meets leading entries in column order."""
    nvars = I.nvars
    index = monomial_index(nvars, m)
    ncols = len(index)
    rows = []
    for g in I.generators:
        dg = g.degree()
        if dg > m:
            continue
        gi = g.primitive_integer()
        items = [(mono, int(c)) for mono, c in gi.terms.items()]
        for mu in graded_monomials(nvars, m - dg):
            row = [0] * ncols
            for mono, c in items:
                row[index[tuple(a + b for a, b in zip(mono, mu))]] = c
            rows.append(row)

    def lead(row):
        for j, x in enumerate(row):
            if x:
                return j
        return ncols

    rows.sort(key=lead)
    return rows, ncols


def slice_echelon(I, m):
    """Echelon basis of the degree-m slice of I.

    Returns (rows, pivot_cols, monomials): the first len(pivot_cols) rows form
    a triangular basis of the slice over the degree-m monomial basis (listed
    in descending grevlex order).
    """
    monomials = graded_monomials(I.nvars, m)
    rows, _ = _slice_rows(I, m)
    if not rows:
        return [], [], monomials
    pivot_cols = int_row_echelon(rows)
    return rows[: len(pivot_cols)], pivot_cols, monomials


def graded_piece_dim(I, m):
    """Dimension of the degree-m slice of the ideal as a Q-vector space."""
    if m < 0:
        raise IdealError("degree must be >= 0")
    cached = I._dims.get(m)
    if cached is None:
        rows, _ = _slice_rows(I, m)
        cached = len(int_row_echelon(rows)) if rows else 0
        I._dims[m] = cached
    return cached


def quotient_dim(I, m):
    """h^0 of degree-m forms modulo the slice: comb(n+m, n) - slice dim."""
    n = I.nvars - 1
    return comb(n + m, n) - graded_piece_dim(I, m)


# ---------------------------------------------------------------------------
# Groebner bases (Buchberger) and the standard-monomial route
# ---------------------------------------------------------------------------

def _reduce_terms(terms, basis_info):
    """Full normal form of a term dict against (lm, lc, terms) reducers."""
    p = dict(terms)
    rem = {}
    while p:
        lm = max(p, key=grevlex_key)
        lc = p[lm]
        for glm, glc, gterms in basis_info:
            if monomial_divides(glm, lm):
                q = monomial_div(lm, glm)
                c = lc / glc
                for mono, cc in gterms.items():
                    key = tuple(a + b for a, b in zip(mono, q))
                    s = p.get(key, 0) - c * cc
                    if s:
                        p[key] = s
                    else:
                        del p[key]
                break
        else:
            rem[lm] = lc
            del p[lm]
    return rem


def normal_form(f, basis):
    """Remainder of f under multivariate division by the list `basis`."""
    info = [(g.leading_monomial(), g.leading_coefficient(), g.terms)
            for g in basis if g]
    return Poly._raw(f.nvars, _reduce_terms(f.terms, info))


def groebner_basis(gens):
    """Reduced Groebner basis via Buchberger with the coprimality and chain
    criteria; deterministic for a fixed generator list."""
    G = []
    for g in gens:
        if g:
            G.append(g.monic())
    if not G:
        return []
    lms = [g.leading_monomial() for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}

    def pair_key(pair):
        i, j = pair
        return (grevlex_key(monomial_lcm(lms[i], lms[j])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lcm_ij = monomial_lcm(lms[i], lms[j])
        # product criterion: coprime leading monomials reduce to zero
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        # chain criterion: a third element divides the lcm and both of its
        # pairs with i, j were already treated
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if monomial_divides(lms[k], lcm_ij):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        fi, fj = G[i], G[j]
        ti = monomial_div(lcm_ij, lms[i])
        tj = monomial_div(lcm_ij, lms[j])
        s = fi.mul_term(Fraction(1), ti) - fj.mul_term(Fraction(1), tj)
        info = [(lm, g.leading_coefficient(), g.terms)
                for lm, g in zip(lms, G)]
        h = Poly._raw(s.nvars, _reduce_terms(s.terms, info))
        if h:
            h = h.monic()
            idx = len(G)
            G.append(h)
            lms.append(h.leading_monomial())
            pairs.update((k, idx) for k in range(idx))

    # minimalize: drop elements whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(G):
        lm = lms[i]
        if any(k != i and monomial_divides(lms[k], lm)
               and (lms[k] != lm or k < i) for k in range(len(G))):
            continue
        keep.append(g)
    # interreduce: fully reduce each element against the others
    reduced = []
    for i, g in enumerate(keep):
        others = [(h.leading_monomial(), h.leading_coefficient(), h.terms)
                  for k, h in enumerate(keep) if k != i]
        h = Poly._raw(g.nvars, _reduce_terms(g.terms, others))
        if h:
            reduced.append(h.monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    return reduced


def membership(f, I):
    """True iff f lies in the ideal (normal form against the cached reduced
    Groebner basis is zero)."""
    if f.nvars != I.nvars:
        raise IdealError("variable count mismatch")
    if I.is_zero:
        return not f
    if not f:
        return True
    return not normal_form(f, I.groebner())


def quotient_dim_via_standard_monomials(I, m):
    """Independent oracle for quotient_dim: count degree-m monomials not
    divisible by any Groebner leading monomial."""
    if I.is_zero:
        n = I.nvars - 1
        return comb(n + m, n)
    leads = [g.leading_monomial() for g in I.groebner()]
    count = 0
    for mono in graded_monomials(I.nvars, m):
        if not any(monomial_divides(lm, mono) for lm in leads):
            count += 1
    return count


# ---------------------------------------------------------------------------
# geometric profile via the Hilbert polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeomProfile:
    """Numeric invariants of the subscheme Y cut out by an ideal inside
    projective n-space: dimension d, codimension c = n - d, degree, and the
    multiplicity of the ambient space along Y (1, the ambient is smooth)."""

    n: int
    d: int
    c: int
    degY: int
    eY: int = 1

    def __post_init__(self):
        if self.c != self.n - self.d:
            raise IdealError("inconsistent codimension")
        if self.degY < 1:
            raise IdealError("degree must be >= 1")
        if self.eY != 1:
            raise IdealError("only multiplicity 1 is supported")


def interpolate_values(xs, ys):
    """Exact Lagrange interpolation; returns coefficients (ascending powers)
    of the unique polynomial of degree < len(xs) through the points."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        # numerator polynomial prod_{j != i} (t - xs[j]), ascending coeffs
        num = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            num = [(num[t - 1] if t else Fraction(0))
                   - xs[j] * (num[t] if t < len(num) else Fraction(0))
                   for t in range(len(num) + 1)]
            denom *= xs[i] - xs[j]
        w = Fraction(ys[i]) / denom
        for t, c in enumerate(num):
            coeffs[t] += w * c
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def hilbert_profile(I, m0=None, r_context=1):
    """Extract (dimension, degree) of the subscheme from the eventual
    Hilbert polynomial of the quotient.

    Dimensions are sampled over two overlapping windows of n + 1 consecutive
    degrees starting at m0 (default: max generator degree * r_context + n + 1)
    and the interpolated polynomials must agree exactly, otherwise the pieces
    have not stabilized and WindowInstabilityError is raised.
    """
    n = I.nvars - 1
    if m0 is None:
        m0 = I.max_generator_degree() * r_context + n + 1
    width = n + 1
    ms = list(range(m0, m0 + width + 1))
    dims = [quotient_dim(I, m) for m in ms]
    if all(v == 0 for v in dims):
        raise EmptySubschemeError(
            f"quotient is zero in all degrees {ms[0]}..{ms[-1]}")
    p1 = interpolate_values(ms[:width], dims[:width])
    p2 = interpolate_values(ms[1:], dims[1:])
    if p1 != p2:
        raise WindowInstabilityError(
            f"windows starting at {m0} and {m0 + 1} disagree; "
            f"retry with a larger m0")
    if not p1:
        raise EmptySubschemeError("Hilbert polynomial is identically zero")
    d = len(p1) - 1
    lead = p1[-1] * factorial(d)
    if lead.denominator != 1 or lead <= 0:
        raise WindowInstabilityError(
            f"leading coefficient {p1[-1]} does not yield a positive integer "
            f"degree; sampled window is not stable")
    return GeomProfile(n=n, d=d, c=n - d, degY=int(lead), eY=1)
