"""Homogeneous polynomials over Q in variables x0, x1, ...

Monomials are exponent tuples.  The global term order is graded
lexicographic with x0 > x1 > ...; within one degree the monomial basis is
listed from the largest monomial (x0^e) down to the smallest.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping

from .errors import DegreeMismatch, NonHomogeneous, PolynomialSyntaxError, VariableOutOfRange

Monomial = tuple  # tuple[int, ...] of exponents


def _compositions(nvars: int, degree: int) -> Iterator[tuple]:
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _compositions(nvars - 1, degree - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple:
    """All monomials of total ``degree`` in ``nvars`` variables, largest first."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        return ()
    return tuple(_compositions(nvars, degree))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(nvars, degree))}


def count_monomials(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


class GradedPoly:
    """A homogeneous polynomial with a declared degree.

    The zero polynomial keeps its degree tag, which may be negative.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "degree", "_terms", "_hash")

    def __init__(self, nvars: int, degree: int, terms: Mapping | None = None):
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            mono = tuple(mono)
            if len(mono) != nvars:
                raise VariableOutOfRange(f"monomial {mono} does not have {nvars} exponents")
            if sum(mono) != degree:
                raise NonHomogeneous(f"monomial {mono} has degree {sum(mono)}, declared {degree}")
            clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "GradedPoly":
        return cls(nvars, degree)

    @classmethod
    def monomial(cls, exps, coeff=1) -> "GradedPoly":
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: coeff})

    @classmethod
    def from_vector(cls, nvars: int, degree: int, coeffs: Mapping[int, Fraction]) -> "GradedPoly":
        basis = monomial_basis(nvars, degree)
        return cls(nvars, degree, {basis[i]: c for i, c in coeffs.items()})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, mono) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def to_vector(self) -> dict[int, Fraction]:
        """Coefficients keyed by position in ``monomial_basis``."""
        idx = monomial_index(self.nvars, self.degree)
        return {idx[m]: c for m, c in self._terms.items()}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "GradedPoly"):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        if other.degree != self.degree:
            raise NonHomogeneous(f"cannot add degree {self.degree} and degree {other.degree}")
        return None

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GradedPoly(self.nvars, self.degree, out)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.nvars, self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GradedPoly":
        c = Fraction(c)
        return GradedPoly(self.nvars, self.degree, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            return GradedPoly(self.nvars, self.degree + other.degree, out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self, var: int) -> "GradedPoly":
        if not 0 <= var < self.nvars:
            raise VariableOutOfRange(f"variable x{var} not in x0..x{self.nvars - 1}")
        out = {}
        for m, c in self._terms.items():
            e = m[var]
            if e:
                mm = list(m)
                mm[var] -= 1
                out[tuple(mm)] = c * e
        return GradedPoly(self.nvars, self.degree - 1, out)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return (self.nvars, self.degree, self._terms) == (other.nvars, other.degree, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.degree, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"GradedPoly({format_poly(self)!r}, degree={self.degree})"


def partial_derivative(p: GradedPoly, var: int) -> GradedPoly:
    return p.derivative(var)


def _format_monomial(m) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: GradedPoly) -> str:
    """Deterministic text form, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|([+\-*/^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.start(0) == m.end(0):
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        kind = {1: "int", 2: "x", 3: "op"}[m.lastindex]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end(0)
    toks.append(("end", "", n))
    return toks


def parse_poly(text: str, nvars: int, degree: int | None = None) -> GradedPoly:
    """Parse ``text`` under the grammar

        poly   := term (('+'|'-') term)*
        term   := coeff? ('*'? factor)*
        factor := 'x' INDEX ('^' EXPONENT)?
        coeff  := INTEGER | INTEGER '/' INTEGER

    (a leading sign is also accepted).  ``degree`` fixes the degree tag,
    which matters only for the zero polynomial.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        t = toks[i]
        if (kind and t[0] != kind) or (value and t[1] != value):
            want = value or kind
            raise PolynomialSyntaxError(f"expected {want!r}, found {t[1] or 'end of input'!r}", text, t[2])
        i += 1
        return t

    terms: list[tuple[tuple, Fraction, int]] = []
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    while True:
        start = peek()[2]
        coeff = Fraction(1)
        had_coeff = False
        if peek()[0] == "int":
            num = int(take()[1])
            den = 1
            if peek()[:2] == ("op", "/"):
                take("op", "/")
                dt = take("int")
                den = int(dt[1])
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", text, dt[2])
            coeff = Fraction(num, den)
            had_coeff = True
        exps = [0] * nvars
        had_factor = False
        while True:
            t = peek()
            if t[0] == "op" and t[1] == "*":
                nxt = toks[i + 1]
                if nxt[0] != "x":
                    raise PolynomialSyntaxError("expected a variable after '*'", text, nxt[2])
                take()
                continue
            if t[0] != "x":
                break
            take("x")
            it = take("int")
            var = int(it[1])
            if var >= nvars:
                raise VariableOutOfRange(f"variable x{var} not in x0..x{nvars - 1} (position {it[2]})")
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                e = int(take("int")[1])
            exps[var] += e
            had_factor = True
        if not (had_coeff or had_factor):
            t = peek()
            raise PolynomialSyntaxError("empty term", text, t[2])
        terms.append((tuple(exps), sign * coeff, start))
        t = peek()
        if t[0] == "end":
            break
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
            continue
        raise PolynomialSyntaxError(f"unexpected {t[1]!r}", text, t[2])

    out: dict = {}
    for m, c, _ in terms:
        out[m] = out.get(m, 0) + c
    out = {m: c for m, c in out.items() if c}
    degs = {sum(m) for m in out}
    if not degs:
        if degree is not None:
            return GradedPoly.zero(nvars, degree)
        degs = {sum(m) for m, _, _ in terms}
    if len(degs) != 1:
        raise NonHomogeneous(f"non-homogeneous polynomial {text!r}: term degrees {sorted(degs)}")
    deg = degs.pop()
    if degree is not None and deg != degree:
        raise DegreeMismatch(degree, deg, "polynomial")
    return GradedPoly(nvars, deg, out)
