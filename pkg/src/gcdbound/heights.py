"""Weil heights and generalized-GCD heights of rational points over Q.

A point is a tuple of coprime integers with positive first nonzero entry.
The GCD height against a subvariety is computed from a generator
presentation of its ideal: the finite part is the sum over primes of the
minimal valuation of the generator values, the archimedean part compares
each value to the degree-scaled sup norm, clipped at zero.  Generators are
used as given apart from clearing coefficient denominators, so the result
carries the usual bounded generator dependence.

All gcd/valuation arithmetic is exact big-integer work; logarithms (natural)
enter only in the final step.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf, isqrt, log
from typing import NamedTuple

from .polyalgebra import compile_evaluator

TRIAL_DIVISION_LIMIT = 10 ** 6


class HeightError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact integer factorization: trial division, Miller-Rabin, Pollard rho
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    """Deterministic Miller-Rabin for n below 3.3e24 (fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    """One nontrivial factor of composite odd n; deterministic (the Brent
    cycle walk retries with increasing polynomial shifts, never random)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, m = 2, 128
        g = q = r = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise HeightError(f"factorization failed for {n}")  # unreachable at desk scale


def factorize(n):
    """Sorted (prime, exponent) factorization of n >= 1."""
    if n < 1:
        raise HeightError("factorize expects a positive integer")
    factors = {}

    def add(p, e=1):
        factors[p] = factors.get(p, 0) + e

    for p in (2, 3):
        while n % p == 0:
            add(p)
            n //= p
    d = 5
    limit = min(TRIAL_DIVISION_LIMIT, isqrt(n))
    while d <= limit and n > 1:
        changed = False
        for step in (d, d + 2):
            while n % step == 0:
                add(step)
                n //= step
                changed = True
        d += 6
        if changed:
            limit = min(TRIAL_DIVISION_LIMIT, isqrt(n))
    if n > 1:
        if n < TRIAL_DIVISION_LIMIT ** 2 or is_probable_prime(n):
            add(n)
        else:
            stack = [n]
            while stack:
                v = stack.pop()
                if is_probable_prime(v):
                    add(v)
                    continue
                f = _pollard_rho(v)
                stack.append(f)
                stack.append(v // f)
    return sorted(factors.items())


def valuation(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise HeightError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# projective points
# ---------------------------------------------------------------------------

def normalize_point(raw):
    """Canonical coprime-integer representative: denominators cleared, gcd 1,
    first nonzero coordinate positive.  Idempotent."""
    fracs = [Fraction(x) for x in raw]
    if all(x == 0 for x in fracs):
        raise HeightError("zero vector does not define a projective point")
    den = 1
    for x in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def weil_height(x):
    """log of the largest absolute coordinate of a normalized point."""
    return log(max(abs(c) for c in x))


class HeightBreakdown(NamedTuple):
    weil: float
    gcd_finite: float
    gcd_arch: float
    gcd_total: float
    vanishing_flag: bool


class HeightEngine:
    """Generator system of an ideal, precompiled for evaluating the GCD
    height at many integer points.

    Each generator is scaled by the lcm of its coefficient denominators so
    values at integer points are integers; no further normalization is done
    (rescaling a generator shifts the finite part by a bounded amount, which
    callers opt into by choosing their presentation).
    """

    def __init__(self, ideal):
        if ideal.is_zero:
            raise HeightError("GCD height needs a nonzero ideal")
        self.nvars = ideal.nvars
        self.degrees = []
        self.evals = []
        for g in ideal.generators:
            gi = g.scale(g.denominator_lcm()) if g.denominator_lcm() != 1 else g
            self.degrees.append(gi.degree())
            self.evals.append(compile_evaluator(gi))

    def values(self, coords):
        """Exact integer generator values at an integer coordinate tuple."""
        return [int(ev(*coords)) for ev in self.evals]

    def breakdown(self, coords):
        if len(coords) != self.nvars:
            raise HeightError("coordinate count mismatch")
        weil = log(max(abs(c) for c in coords))
        vals = self.values(coords)
        nonzero = [abs(v) for v in vals if v]
        if not nonzero:
            return HeightBreakdown(weil, inf, inf, inf, True)
        g = 0
        for v in nonzero:
            g = gcd(g, v)
        fin = 0.0
        if g > 1:
            for p, _ in factorize(g):
                mp = min(valuation(v, p) for v in nonzero)
                fin += mp * log(p)
        arch = min(d * weil - log(abs(v))
                   for d, v in zip(self.degrees, vals) if v)
        if arch < 0.0:
            arch = 0.0
        return HeightBreakdown(weil, fin, arch, fin + arch, False)


def gcd_height(x, ideal):
    """GCD height of a normalized point against the subvariety cut out by
    the ideal's generators; vanishing_flag marks points on the subvariety
    (all parts reported as +inf there)."""
    return HeightEngine(ideal).breakdown(tuple(x))
