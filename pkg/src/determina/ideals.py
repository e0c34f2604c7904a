"""Ideal arithmetic in the formal local ring, with certified power tests.

Every question of the form "does this ideal contain m^N" is answered by a
truncated jet computation plus a Nakayama argument:

    m^N subset I + m^(N+1)  implies  m^N subset I

because m^(N+1) = m * m^N and (I + m^N)/I is a finitely generated module
over a local ring.  A "yes" from :func:`contains_power` is therefore exact
over the formal ring, not merely modulo the truncation.  This is the single
bridge that turns jet answers into statements about k[[x_1..x_p]].

Monomial ideals additionally get exact combinatorial fast paths (membership
is divisibility, colon is exponent subtraction), which the jet route must
agree with; the test suite checks the agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .jets import JetContext, span
from .poly import Monomial, Poly, mono_degree, mono_divides, mono_mul, monomials_of_degree


def _minimalize_monomials(monos: Iterable[Monomial]) -> list[Monomial]:
    """Keep only divisibility-minimal exponent vectors, in graded order."""
    minimal: list[Monomial] = []
    for u in sorted(set(monos), key=lambda m: (mono_degree(m), m)):
        if not any(mono_divides(v, u) for v in minimal):
            minimal.append(u)
    return minimal


class Ideal:
    """Finitely generated ideal given by polynomial generators.

    Zero generators are dropped.  When every generator is a single term the
    ideal is flagged monomial; monomial generators are normalized to monic
    monomials and minimalized eagerly so the generating set is canonical.
    """

    __slots__ = ("nvars", "generators", "is_monomial")

    def __init__(self, nvars: int, generators: Iterable[Poly]):
        gens = [g for g in generators if not g.is_zero()]
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("generator has wrong variable count")
        monomial = all(g.is_monomial() for g in gens) if gens else True
        if monomial and gens:
            monos = _minimalize_monomials(next(iter(g.terms)) for g in gens)
            gens = [Poly.monomial(m) for m in monos]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "is_monomial", monomial)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    @staticmethod
    def zero(nvars: int) -> "Ideal":
        return Ideal(nvars, [])

    @staticmethod
    def unit(nvars: int) -> "Ideal":
        return Ideal(nvars, [Poly.constant(nvars, 1)])

    @staticmethod
    def from_monomials(nvars: int, monos: Iterable[Monomial]) -> "Ideal":
        return Ideal(nvars, [Poly.monomial(m) for m in monos])

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        # exact only on the monomial path; general ideals may hide a unit
        return any(g.constant_term() != 0 for g in self.generators)

    def monomial_exponents(self) -> list[Monomial]:
        if not self.is_monomial:
            raise ValueError("not a monomial ideal")
        return [next(iter(g.terms)) for g in self.generators]

    def max_generator_degree(self) -> int:
        return max((g.total_degree() for g in self.generators), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and self.nvars == other.nvars
            and set(self.generators) == set(other.generators)
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.generators)))

    def __repr__(self) -> str:
        return f"Ideal({[g.to_string() for g in self.generators]})"

    def to_strings(self, names: tuple[str, ...] | None = None) -> list[str]:
        """Serialization used everywhere: a JSON-ready array of poly strings."""
        return [g.to_string(names) for g in self.generators]


@dataclass(frozen=True)
class CertifiedBool:
    """A yes/no answer together with the truncation evidence behind it.

    For "yes" the certificate records the degree at which the Nakayama step
    closed; such answers are exact over the formal ring.  For "no" the
    certificate is an explicit element that fails membership at the stated
    truncation, exact whenever the tested containment is degree-bounded by
    the truncation (all callers in this package arrange that).
    """

    value: bool
    truncation_used: int
    certificate: str

    def __bool__(self) -> bool:
        return self.value


# -- generator-level constructions ------------------------------------------


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    return Ideal(a.nvars, list(a.generators) + list(b.generators))


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    return Ideal(a.nvars, [f * g for f in a.generators for g in b.generators])


def ideal_power(a: Ideal, exponent: int) -> Ideal:
    if exponent < 0:
        raise ValueError("negative power")
    result = Ideal.unit(a.nvars)
    for _ in range(exponent):
        result = ideal_product(result, a)
    return result


def maximal_power(nvars: int, degree: int) -> Ideal:
    """m^degree, generated by all monomials of the given total degree."""
    if degree < 0:
        raise ValueError("negative power")
    if degree == 0:
        return Ideal.unit(nvars)
    return Ideal.from_monomials(nvars, monomials_of_degree(nvars, degree))


# -- certified containment ----------------------------------------------------


def monomial_member(mono: Monomial, ideal: Ideal) -> bool:
    """Membership of a monomial in a monomial ideal: divisibility by a generator."""
    if not ideal.is_monomial:
        raise ValueError("monomial membership needs a monomial ideal")
    return any(mono_divides(g, mono) for g in ideal.monomial_exponents())


def contains_power(ideal: Ideal, power: int) -> CertifiedBool:
    """Decide m^power subset ideal over the formal ring.

    Jet route: every monomial of degree ``power`` must lie in the span of the
    generators inside k[x]/m^(power+1); Nakayama then lifts the answer.  The
    monomial fast path replaces the span test by divisibility, which computes
    the same containment.
    """
    if power < 0:
        raise ValueError("negative power")
    nvars = ideal.nvars
    truncation = power + 1
    targets = list(monomials_of_degree(nvars, power))
    if ideal.is_monomial:
        for u in targets:
            if not monomial_member(u, ideal):
                return CertifiedBool(False, truncation, f"monomial witness {Poly.monomial(u).to_string()}")
        return CertifiedBool(True, truncation, f"all degree-{power} monomials divisible; Nakayama at degree {truncation}")
    context = JetContext(nvars, truncation)
    basis = span([(g,) for g in ideal.generators], context, 1)
    for u in targets:
        if not basis.contains_module_element((Poly.monomial(u),)):
            return CertifiedBool(False, truncation, f"monomial witness {Poly.monomial(u).to_string()}")
    return CertifiedBool(True, truncation, f"jet span covers degree {power}; Nakayama at degree {truncation}")


@dataclass(frozen=True)
class LoewyResult:
    """Either the Loewy length or the news that it exceeds the search budget."""

    value: int | None
    budget: int

    @property
    def exceeded(self) -> bool:
        return self.value is None


def loewy_length(ideal: Ideal, n_max: int) -> LoewyResult:
    """Smallest N <= n_max with m^N subset ideal; ll((1)) = 0."""
    for power in range(n_max + 1):
        if contains_power(ideal, power):
            return LoewyResult(power, n_max)
    return LoewyResult(None, n_max)


# -- colon ideals -------------------------------------------------------------


def _colon_single_monomial(exponents: Sequence[Monomial], u: Monomial) -> list[Monomial]:
    # I : (x^u) for monomial I is generated by x^max(g-u, 0) over generators g
    return _minimalize_monomials(
        tuple(max(g_i - u_i, 0) for g_i, u_i in zip(g, u)) for g in exponents
    )


def _intersect_monomial(a: list[Monomial], b: list[Monomial]) -> list[Monomial]:
    # intersection of monomial ideals: pairwise lcms
    return _minimalize_monomials(
        tuple(max(x, y) for x, y in zip(g, h)) for g in a for h in b
    )


def colon_monomial(ideal: Ideal, divisor: Ideal) -> Ideal:
    """Exact colon I : J for monomial ideals.

    I : (u_1,..,u_s) is the intersection over t of I : (u_t), and each
    I : (u) is read off by exponent subtraction.
    """
    if not ideal.is_monomial or not divisor.is_monomial:
        raise ValueError("exact colon is only computed for monomial ideals")
    if divisor.is_zero():
        return Ideal.unit(ideal.nvars)
    if ideal.is_zero():
        return Ideal.zero(ideal.nvars)
    gens = ideal.monomial_exponents()
    result: list[Monomial] | None = None
    for u in divisor.monomial_exponents():
        part = _colon_single_monomial(gens, u)
        result = part if result is None else _intersect_monomial(result, part)
    return Ideal.from_monomials(ideal.nvars, result or [])


def colon_contains_power(ideal: Ideal, divisor: Ideal, power: int) -> CertifiedBool:
    """Decide m^power * J subset I, i.e. m^power subset I : J.

    Each generator of m^power * J is tested in the jet span of I at
    truncation power + 1 + max generator degree of J, so every product formed
    in the Nakayama step is degree-faithful.
    """
    if power < 0:
        raise ValueError("negative power")
    nvars = ideal.nvars
    if divisor.is_zero():
        return CertifiedBool(True, power + 1, "zero divisor ideal: containment is trivial")
    truncation = power + 1 + divisor.max_generator_degree()
    if ideal.is_monomial and divisor.is_monomial:
        quotient = colon_monomial(ideal, divisor)
        inner = contains_power(quotient, power)
        return CertifiedBool(inner.value, truncation, f"monomial colon route: {inner.certificate}")
    context = JetContext(nvars, truncation)
    basis = span([(g,) for g in ideal.generators], context, 1)
    for u in monomials_of_degree(nvars, power):
        for g in divisor.generators:
            product = g.mul_monomial(u)
            if not basis.contains_module_element((product,)):
                witness = f"({Poly.monomial(u).to_string()})*({g.to_string()})"
                return CertifiedBool(False, truncation, f"witness {witness} escapes the span")
    return CertifiedBool(True, truncation, f"m^{power}*J inside span; Nakayama at degree {truncation}")


# -- monomial-only invariants --------------------------------------------------


def monomial_height(ideal: Ideal) -> int:
    """Height of a proper nonzero monomial ideal.

    Computed as the minimal number of variables meeting the support of every
    generator (a minimal vertex cover of the supports), which is the minimal
    height of an associated monomial prime.
    """
    if not ideal.is_monomial:
        raise ValueError("height is only computed for monomial ideals")
    if ideal.is_zero():
        raise ValueError("zero ideal has no height here")
    if ideal.is_unit():
        raise ValueError("unit ideal has no height here")
    supports = [frozenset(i for i, e in enumerate(g) if e > 0) for g in ideal.monomial_exponents()]
    for size in range(1, ideal.nvars + 1):
        for cover in combinations(range(ideal.nvars), size):
            chosen = set(cover)
            if all(s & chosen for s in supports):
                return size
    raise AssertionError("a proper monomial ideal always has a cover")
