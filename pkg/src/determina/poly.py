"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a finite map from monomials to nonzero rational coefficients.
Monomials are plain exponent tuples, one non-negative integer per variable,
so the monomial x^3*y of k[x,y] is (3, 1).  Coefficients are
``fractions.Fraction`` values, which keeps every operation exact; there is no
floating-point mode anywhere in this package.

The zero polynomial has an empty term map and order +infinity.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]

_ZERO = Fraction(0)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent tuples of the given total degree, in lexicographic order."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
                c = Fraction(coeff)
                if c != 0:
                    clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def constant(nvars: int, value) -> "Poly":
        return Poly(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(nvars: int, index: int) -> "Poly":
        exps = [0] * nvars
        exps[index] = 1
        return Poly(nvars, {tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(exps: Monomial, coeff=1) -> "Poly":
        return Poly(len(exps), {tuple(exps): Fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, _ZERO) + coeff
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, _ZERO) - coeff
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.nvars)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, _ZERO) + ca * cb
        return Poly(self.nvars, out)

    def scale(self, value) -> "Poly":
        c = Fraction(value)
        if c == 0:
            return Poly(self.nvars)
        return Poly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, coeff=1) -> "Poly":
        c = Fraction(coeff)
        if c == 0:
            return Poly(self.nvars)
        return Poly(self.nvars, {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int | float:
        """Minimal total degree of a term; +inf for the zero polynomial."""
        if not self.terms:
            return math.inf
        return min(mono_degree(m) for m in self.terms)

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, _ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), _ZERO)

    def truncate(self, degree_bound: int) -> "Poly":
        """Drop all terms of total degree >= degree_bound."""
        return Poly(
            self.nvars,
            {m: c for m, c in self.terms.items() if mono_degree(m) < degree_bound},
        )

    def evaluate(self, point: Iterable[Fraction]) -> Fraction:
        pt = list(point)
        total = _ZERO
        for mono, coeff in self.terms.items():
            v = coeff
            for x, e in zip(pt, mono):
                v *= x**e
            total += v
        return total

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.to_string()!r})"

    def to_string(self, names: tuple[str, ...] | None = None) -> str:
        """Render in the input grammar, deterministically ordered."""
        if names is None:
            names = default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (mono_degree(m), m)):
            coeff = self.terms[mono]
            factors = []
            for name, exp in zip(names, mono):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (("-" if first_sign == "-" else "") + first_body)
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def default_names(nvars: int) -> tuple[str, ...]:
    if nvars <= 3:
        return ("x", "y", "z")[:nvars]
    return tuple(f"x{i+1}" for i in range(nvars))


class PolyParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise PolyParseError(f"unexpected character {stripped[0]!r}", pos)
        if match.lastgroup is not None:
            tokens.append((match.lastgroup, match.group(match.lastgroup), match.start(match.lastgroup)))
        pos = match.end()
    return tokens


def poly_parse(text: str, names: Iterable[str]) -> Poly:
    """Parse ``c*x^a*y^b + ...`` with integer or ``a/b`` rational coefficients.

    Whitespace is insignificant.  ``names`` fixes the exponent slots; an
    identifier outside ``names`` is an error.
    """
    name_list = list(names)
    index = {n: i for i, n in enumerate(name_list)}
    nvars = len(name_list)
    tokens = _tokenize(text)
    n = len(tokens)
    pos = 0

    def peek():
        return tokens[pos] if pos < n else (None, "", len(text))

    def parse_nat() -> int:
        nonlocal pos
        kind, value, at = peek()
        if kind != "int":
            raise PolyParseError("expected an integer exponent", at)
        pos += 1
        return int(value)

    def parse_coeff() -> Fraction:
        nonlocal pos
        kind, value, at = peek()
        if kind != "int":
            raise PolyParseError("expected an integer", at)
        pos += 1
        numer = int(value)
        kind, _, _ = peek()
        if kind == "op" and tokens[pos][1] == "/":
            pos += 1
            kind, value, at = peek()
            if kind != "int":
                raise PolyParseError("expected a denominator", at)
            pos += 1
            denom = int(value)
            if denom == 0:
                raise PolyParseError("zero denominator", at)
            return Fraction(numer, denom)
        return Fraction(numer)

    def parse_term() -> Poly:
        nonlocal pos
        coeff = Fraction(1)
        exps = [0] * nvars
        saw_factor = False
        expect_factor = True
        while True:
            kind, value, at = peek()
            if kind == "int":
                coeff *= parse_coeff()
            elif kind == "name":
                if value not in index:
                    raise PolyParseError(f"unknown variable {value!r}", at)
                pos += 1
                exp = 1
                kind2, value2, _ = peek()
                if kind2 == "op" and value2 == "^":
                    pos += 1
                    exp = parse_nat()
                exps[index[value]] += exp
            else:
                if expect_factor:
                    raise PolyParseError("expected a term", at)
                break
            saw_factor = True
            kind2, value2, _ = peek()
            if kind2 == "op" and value2 == "*":
                pos += 1
                expect_factor = True
            elif kind2 == "name":
                expect_factor = False
            else:
                break
        if not saw_factor:
            raise PolyParseError("expected a term", peek()[2])
        return Poly(nvars, {tuple(exps): coeff})

    result = Poly(nvars)
    sign = 1
    kind, value, _ = peek()
    if kind == "op" and value in "+-":
        sign = -1 if value == "-" else 1
        pos += 1
    result = result + parse_term().scale(sign)
    while pos < n:
        kind, value, at = peek()
        if kind != "op" or value not in "+-":
            raise PolyParseError(f"expected '+' or '-', found {value!r}", at)
        pos += 1
        sign = -1 if value == "-" else 1
        result = result + parse_term().scale(sign)
    return result
