"""Exact multivariate polynomial arithmetic over Q and exact dense linear algebra.

Coefficients are `fractions.Fraction` throughout (never floats), monomials are
plain tuples of non-negative exponents, and the fixed term order is graded
reverse lexicographic.  Everything downstream (graded dimension counts,
Groebner bases, section search) is built on the two primitives here: `Poly`
and `ExactMatrix`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

Rat = Fraction
Monomial = tuple  # tuple of non-negative ints, one slot per variable


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    """Syntax or range error in polynomial text, with the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# monomial helpers (grevlex order)
# ---------------------------------------------------------------------------

def monomial_degree(m):
    return sum(m)


def grevlex_key(m):
    """Sort key realizing graded reverse lexicographic order.

    max() over this key gives the leading monomial: compare total degree
    first, then the rightmost differing exponent decides (smaller wins).
    """
    return (sum(m), tuple(-e for e in reversed(m)))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_str(m):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


@lru_cache(maxsize=None)
def graded_monomials(nvars, degree):
    """All monomials in `nvars` variables of total degree `degree`.

    Returned as a tuple in descending grevlex order (leading monomial first);
    the count is comb(nvars - 1 + degree, degree).
    """
    if nvars < 1:
        raise PolyError("nvars must be >= 1")
    if degree < 0:
        raise PolyError("degree must be >= 0")

    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars, degree):
    """Map monomial -> position in graded_monomials(nvars, degree)."""
    return {m: i for i, m in enumerate(graded_monomials(nvars, degree))}


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Multivariate polynomial with exact rational coefficients.

    Immutable after construction.  `terms` maps exponent tuples to nonzero
    Fractions; the zero polynomial has an empty term map and undefined degree.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        object.__setattr__(self, "nvars", int(nvars))
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    m = tuple(int(e) for e in m)
                    if len(m) != nvars or any(e < 0 for e in m):
                        raise PolyError(f"bad monomial {m} for nvars={nvars}")
                    clean[m] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise PolyError(f"variable index {i} out of range for nvars={nvars}")
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(nvars, {m: Fraction(1)})

    @classmethod
    def from_monomial(cls, nvars, m, c=1):
        return cls(nvars, {tuple(m): Fraction(c)})

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise PolyError("variable count mismatch")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Poly._raw(self.nvars, res)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        res = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    del res[m]
        return Poly._raw(self.nvars, res)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, c, m):
        """Multiply by the single term c * x^m."""
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars,
                         {tuple(a + b for a, b in zip(mm, m)): cc * c
                          for mm, cc in self.terms.items()})

    def __pow__(self, e):
        if e < 0:
            raise PolyError("negative exponent")
        result = Poly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e >> 1
            if base_needed:
                base = base * base
            e = base_needed
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- inspection ----------------------------------------------------------

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        """Zero counts as homogeneous (of every degree)."""
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self):
        if not self.terms:
            return None
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        lm = self.leading_monomial()
        return self.terms[lm] if lm is not None else Fraction(0)

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]),
                      reverse=True)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, coords):
        """Exact value at an integer (or rational) coordinate vector."""
        if len(coords) != self.nvars:
            raise PolyError(
                f"expected {self.nvars} coordinates, got {len(coords)}")
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(coords, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # -- normal forms ----------------------------------------------------------

    def monic(self):
        lc = self.leading_coefficient()
        if not lc or lc == 1:
            return self
        return self.scale(Fraction(1) / lc)

    def primitive_integer(self):
        """Integer-coefficient scalar multiple with content 1 and positive
        leading coefficient.  Zero maps to zero."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        factor = Fraction(den, num)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self.scale(factor)

    def denominator_lcm(self):
        """LCM of the coefficient denominators (1 for the zero polynomial)."""
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return den

    # -- text -------------------------------------------------------------

    def to_str(self):
        """Canonical text form; parse_poly(to_str(p), p.nvars) == p."""
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms():
            mono = monomial_str(m)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.to_str()!r})"


def eval_poly(f, coords):
    return f.evaluate(coords)


def compile_evaluator(poly):
    """Compile a Poly into a plain Python function of its coordinates.

    The generated function computes the exact same value as poly.evaluate
    (integer arithmetic when all coefficients are integral, Fraction
    otherwise); it exists because the sampling harness evaluates the same
    few polynomials at millions of points.
    """
    names = [f"c{i}" for i in range(poly.nvars)]
    parts = []
    for m, c in poly.sorted_terms():
        factors = []
        if c.denominator == 1:
            if c.numerator != 1 or not any(m):
                factors.append(str(c.numerator) if c.numerator >= 0
                               else f"({c.numerator})")
        else:
            factors.append(f"F({c.numerator},{c.denominator})")
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}**{e}")
        parts.append("*".join(factors) if factors else "1")
    body = " + ".join(parts) if parts else "0"
    src = f"lambda {', '.join(names)}: {body}" if names else f"lambda: {body}"
    return eval(src, {"F": Fraction})  # noqa: S307 - source built from exact terms


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<op>\*\*|[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text) - len(stripped))
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("var")[1:]), m.start("var")))
        else:
            op = "^" if m.group("op") == "**" else m.group("op")
            tokens.append(("op", op, m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, nvars):
        self.tokens = _tokenize(text)
        self.nvars = nvars
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                q = self.unary()
                if val == "*":
                    p = p * q
                else:
                    if q.degree() not in (None, 0):
                        raise ParseError("division only by a nonzero constant",
                                         pos)
                    c = q.terms.get((0,) * self.nvars, Fraction(0))
                    if not c:
                        raise ParseError("division by zero", pos)
                    p = p.scale(Fraction(1) / c)
            else:
                return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, e, pos = self.next()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer",
                                 pos)
            p = p ** e
        return p

    def atom(self):
        kind, val, pos = self.next()
        if kind == "int":
            return Poly.constant(self.nvars, val)
        if kind == "var":
            if val >= self.nvars:
                raise ParseError(
                    f"variable x{val} out of range (nvars={self.nvars})", pos)
            return Poly.variable(self.nvars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError("expected a number, variable or '('", pos)


def parse_poly(text, nvars):
    """Parse polynomial text in variables x0..x{nvars-1} into expanded normal
    form.  Accepts + - * / ^ (also **), parentheses, integer literals and
    rational literals written as a/b."""
    if nvars < 1:
        raise PolyError("nvars must be >= 1")
    return _Parser(text, nvars).parse()


# ---------------------------------------------------------------------------
# exact dense linear algebra
# ---------------------------------------------------------------------------

def int_row_echelon(rows):
    """Row-reduce a dense integer matrix in place, fraction-free.

    Elimination uses cross-multiplication with the gcd of the two leading
    entries removed up front and the row content stripped afterwards, so
    entries stay integral (exact divisions only) without Bareiss's rescaling
    of untouched rows.  Rows that are already zero in the pivot column are
    skipped, which keeps near-triangular inputs cheap.

    Returns the list of pivot columns; the matrix ends in row echelon form
    with the pivot of row k in column pivot_cols[k].
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r]
        a = piv[c]
        piv_tail = piv[c:]
        for i in range(r + 1, nrows):
            row = rows[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            ma, mb = a // g, b // g
            tail = [ma * x - mb * y for x, y in zip(row[c:], piv_tail)]
            content = 0
            for x in tail:
                if x:
                    content = gcd(content, x)
                    if content == 1:
                        break
            if content > 1:
                tail = [x // content for x in tail]
            row[c:] = tail
        pivot_cols.append(c)
        r += 1
    return pivot_cols


def int_matrix_rank(rows):
    """Rank of a dense integer matrix; consumes (mutates) `rows`."""
    return len(int_row_echelon(rows))


class ExactMatrix:
    """Dense matrix of Fractions with exact rank and right-kernel."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = [[Fraction(x) for x in row] for row in entries]
        if entries and any(len(r) != len(entries[0]) for r in entries):
            raise PolyError("ragged matrix")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]) if entries else 0)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def _int_rows(self):
        out = []
        for row in self.entries:
            den = 1
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
            out.append([int(x * den) for x in row])
        return out

    def rank(self):
        return int_matrix_rank(self._int_rows())

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise PolyError("dimension mismatch")
        return [sum((x * Fraction(y) for x, y in zip(row, v)), Fraction(0))
                for row in self.entries]

    def nullspace(self):
        """Basis of the right kernel as primitive integer vectors (returned
        as Fractions).  Empty list iff the matrix has full column rank."""
        rows = self._int_rows()
        pivot_cols = int_row_echelon(rows)
        rank = len(pivot_cols)
        pivset = set(pivot_cols)
        free_cols = [c for c in range(self.cols) if c not in pivset]
        basis = []
        for f in free_cols:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for k in range(rank - 1, -1, -1):
                c = pivot_cols[k]
                row = rows[k]
                s = sum((Fraction(row[j]) * v[j]
                         for j in range(c + 1, self.cols) if row[j] and v[j]),
                        Fraction(0))
                v[c] = -s / row[c]
            basis.append(_primitive_vector(v))
        return basis


def _primitive_vector(v):
    """Scale a rational vector to primitive integer form, first nonzero
    entry positive."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    content = 0
    for x in ints:
        content = gcd(content, x)
    if content > 1:
        ints = [x // content for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return [Fraction(x) for x in ints]


def binomial(n, k):
    return comb(n, k) if 0 <= k <= n else 0
