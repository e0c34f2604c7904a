"""Integral closure of monomial ideals via the Newton polyhedron.

The closure of a monomial ideal is again monomial: a monomial belongs to it
exactly when its exponent vector lies in the convex hull of the generator
exponents plus the positive orthant.  The facet description of that
polyhedron is computed by Fourier-Motzkin elimination of the convex
combination multipliers, entirely in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .ideals import Ideal, _minimalize_monomials, colon_monomial
from .poly import Monomial, mono_degree, monomials_of_degree

Row = tuple[tuple[Fraction, ...], Fraction]  # (coefficients, constant): coeffs . z + constant >= 0


def _normalize_row(coeffs: Sequence[Fraction], const: Fraction) -> Row:
    denominators = [c.denominator for c in coeffs] + [const.denominator]
    scale = 1
    for d in denominators:
        scale = scale * d // gcd(scale, d)
    ints = [int(c * scale) for c in coeffs] + [int(const * scale)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def _fourier_motzkin_eliminate(rows: list[Row], var: int) -> list[Row]:
    """Eliminate variable ``var``; remaining rows keep their arity."""
    zero_rows, pos_rows, neg_rows = [], [], []
    for coeffs, const in rows:
        c = coeffs[var]
        if c == 0:
            zero_rows.append((coeffs, const))
        elif c > 0:
            pos_rows.append((coeffs, const))
        else:
            neg_rows.append((coeffs, const))
    out = set(zero_rows)
    for pc, pk in pos_rows:
        for nc, nk in neg_rows:
            a = pc[var]
            b = -nc[var]
            combo = tuple(b * x + a * y for x, y in zip(pc, nc))
            const = b * pk + a * nk
            if all(v == 0 for v in combo):
                if const < 0:
                    raise AssertionError("infeasible system while eliminating")
                continue
            out.add(_normalize_row(combo, const))
    return list(out)


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(exponents) + R^p_{>=0}, described by facet inequalities w.a >= c."""

    exponents: tuple[Monomial, ...]
    facets: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def contains(self, point: Sequence[int | Fraction]) -> bool:
        return all(
            sum(w_i * Fraction(a_i) for w_i, a_i in zip(w, point)) >= c
            for w, c in self.facets
        )

    def to_json_dict(self) -> dict:
        return {
            "exponents": [list(e) for e in self.exponents],
            "facets": [
                {"normal": [str(x) for x in w], "offset": str(c)}
                for w, c in self.facets
            ],
        }


def newton_polyhedron(ideal: Ideal) -> NewtonPolyhedron:
    """Facet description of the Newton polyhedron of a monomial ideal.

    Variables are ordered (lambda_1..lambda_{k-1}, a_1..a_p); lambda_k is
    substituted out via the convex-combination constraint, then the remaining
    multipliers are eliminated by Fourier-Motzkin.
    """
    if not ideal.is_monomial:
        raise ValueError("Newton polyhedron needs a monomial ideal")
    if ideal.is_zero():
        raise ValueError("the zero ideal has no Newton polyhedron")
    points = [tuple(e) for e in ideal.monomial_exponents()]
    k = len(points)
    p = ideal.nvars
    nvar_total = (k - 1) + p  # lambda_1..lambda_{k-1}, then a_1..a_p

    def make_row(lam_coeffs: Sequence[Fraction], a_coeffs: Sequence[Fraction], const: Fraction) -> Row:
        return _normalize_row(tuple(lam_coeffs) + tuple(a_coeffs), const)

    zero_l = [Fraction(0)] * (k - 1)
    zero_a = [Fraction(0)] * p
    rows: list[Row] = []
    # a_j - sum_i lambda_i s_ij >= 0 with lambda_k = 1 - sum_{i<k} lambda_i
    for j in range(p):
        lam = [Fraction(points[k - 1][j] - points[i][j]) for i in range(k - 1)]
        a = list(zero_a)
        a[j] = Fraction(1)
        rows.append(make_row(lam, a, Fraction(-points[k - 1][j])))
    # lambda_i >= 0 for i < k
    for i in range(k - 1):
        lam = list(zero_l)
        lam[i] = Fraction(1)
        rows.append(make_row(lam, zero_a, Fraction(0)))
    # lambda_k >= 0, i.e. 1 - sum lambda_i >= 0
    rows.append(make_row([Fraction(-1)] * (k - 1), zero_a, Fraction(1)))

    for var in range(k - 1):
        rows = _fourier_motzkin_eliminate(rows, var)

    facets: set[tuple[tuple[Fraction, ...], Fraction]] = set()
    for coeffs, const in rows:
        if any(coeffs[i] != 0 for i in range(k - 1)):
            raise AssertionError("multiplier survived elimination")
        normal = tuple(coeffs[k - 1 :])
        if all(v == 0 for v in normal):
            continue  # 0 >= -const, vacuous for a feasible system
        facets.add((normal, -const))

    # facet verification: keep inequalities tight at some generator point;
    # every true facet of conv(S) + orthant passes through a vertex, and all
    # vertices are generator exponents, so nothing essential is dropped
    kept = []
    for normal, offset in sorted(facets):
        values = [sum(w * s for w, s in zip(normal, pt)) for pt in points]
        if min(values) != offset:
            # valid but slack everywhere: implied by the tight ones
            if min(values) < offset:
                raise AssertionError("generator violates a computed facet")
            continue
        kept.append((normal, offset))
    result = NewtonPolyhedron(tuple(points), tuple(kept))
    for pt in points:
        if not result.contains(pt):
            raise AssertionError("generator escaped its own polyhedron")
    return result


def in_closure(mono: Monomial, ideal: Ideal) -> bool:
    """Membership of a monomial in the integral closure of a monomial ideal."""
    return newton_polyhedron(ideal).contains(mono)


def integral_closure(ideal: Ideal) -> Ideal:
    """Minimal monomial generators of the integral closure.

    No minimal generator exceeds the maximal generator degree of the input;
    the sweep continues through degree max+p-1 (beyond which every lattice
    point of the polyhedron is divisible by a lower one) purely to verify
    that claim.
    """
    if not ideal.is_monomial:
        raise ValueError("integral closure is only computed for monomial ideals")
    if ideal.is_zero():
        raise ValueError("the zero ideal has no closure here")
    polyhedron = newton_polyhedron(ideal)
    p = ideal.nvars
    max_degree = ideal.max_generator_degree()
    found: list[Monomial] = []
    for degree in range(max_degree + p):
        for mono in monomials_of_degree(p, degree):
            if polyhedron.contains(mono):
                found.append(mono)
    minimal = _minimalize_monomials(found)
    overflow = [m for m in minimal if mono_degree(m) > max_degree]
    if overflow:
        raise AssertionError(
            f"closure produced generators above the degree bound: {overflow}"
        )
    return Ideal.from_monomials(p, minimal)


def closure_colon(ideal: Ideal, divisor: Ideal) -> Ideal:
    """closure(I) : closure(J), the colon of the integral closures."""
    return colon_monomial(integral_closure(ideal), integral_closure(divisor))
