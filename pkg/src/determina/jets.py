"""Finite-dimensional exact linear algebra in truncated local algebras.

A :class:`JetContext` fixes the algebra k[x_1..x_p]/m^D.  Its k-basis is the
set of monomials of total degree < D in graded order (by degree, then
lexicographically within a degree); this ordering is part of the stable
output contract and must not change.

A :class:`SubspaceBasis` is a reduced row echelon basis of a k-subspace of a
free jet module (R/m^D)^r, used to answer exact membership questions.  Rows
are kept sparse: a row is a dict from coordinate index to Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .poly import Monomial, Poly, mono_degree, monomials_of_degree

_ZERO = Fraction(0)


class JetContext:
    """The truncated algebra k[x_1..x_p]/m^D with its frozen monomial basis."""

    __slots__ = ("nvars", "truncation", "names", "basis", "index")

    def __init__(self, nvars: int, truncation: int, names: Sequence[str] | None = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if truncation < 1:
            raise ValueError("truncation degree must be >= 1")
        if names is None:
            from .poly import default_names

            names = default_names(nvars)
        names = tuple(names)
        if len(names) != nvars or len(set(names)) != nvars:
            raise ValueError("need one distinct name per variable")
        basis: list[Monomial] = []
        for degree in range(truncation):
            basis.extend(monomials_of_degree(nvars, degree))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "index", {m: i for i, m in enumerate(basis)})

    def __setattr__(self, name, value):
        raise AttributeError("JetContext is immutable")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def truncate(self, poly: Poly) -> Poly:
        return poly.truncate(self.truncation)

    def poly_coords(self, poly: Poly, offset: int = 0) -> dict[int, Fraction]:
        """Sparse coordinates of a polynomial's jet, shifted by ``offset``."""
        coords: dict[int, Fraction] = {}
        for mono, coeff in poly.terms.items():
            if mono_degree(mono) < self.truncation:
                coords[offset + self.index[mono]] = coeff
        return coords

    def module_coords(self, polys: Sequence[Poly]) -> dict[int, Fraction]:
        """Coordinates of an element of the rank-len(polys) jet module."""
        size = self.dimension
        coords: dict[int, Fraction] = {}
        for component, poly in enumerate(polys):
            coords.update(self.poly_coords(poly, offset=component * size))
        return coords

    def coords_to_poly(self, coords: dict[int, Fraction]) -> Poly:
        return Poly(self.nvars, {self.basis[i]: c for i, c in coords.items()})

    def __repr__(self) -> str:
        return f"JetContext(nvars={self.nvars}, truncation={self.truncation})"


def expected_basis_size(nvars: int, truncation: int) -> int:
    """C(p + D - 1, p) monomials of degree < D in p variables."""
    return comb(nvars + truncation - 1, nvars)


class SubspaceBasis:
    """Reduced echelon basis of a subspace of (R/m^D)^ambient_rank.

    The reduced form is canonical for the row space, so two runs that build
    the same subspace produce identical rows regardless of insertion order.
    """

    def __init__(self, context: JetContext, ambient_rank: int):
        self.context = context
        self.ambient_rank = ambient_rank
        # pivot coordinate -> sparse row, normalized so row[pivot] == 1
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Subtract known rows until the leading coordinate is a new pivot."""
        while vec:
            lead = min(vec)
            row = self.rows.get(lead)
            if row is None:
                return vec
            factor = vec[lead]
            for idx, value in row.items():
                updated = vec.get(idx, _ZERO) - factor * value
                if updated == 0:
                    vec.pop(idx, None)
                else:
                    vec[idx] = updated
        return vec

    def insert(self, vec: dict[int, Fraction]) -> bool:
        """Add a vector to the span; returns True iff the dimension grew."""
        vec = self._reduce(dict(vec))
        if not vec:
            return False
        lead = min(vec)
        inv = 1 / vec[lead]
        row = {idx: inv * value for idx, value in vec.items()}
        # keep the basis fully reduced: eliminate the new pivot everywhere
        for pivot, other in self.rows.items():
            factor = other.get(lead)
            if factor is None:
                continue
            for idx, value in row.items():
                updated = other.get(idx, _ZERO) - factor * value
                if updated == 0:
                    other.pop(idx, None)
                else:
                    other[idx] = updated
        self.rows[lead] = row
        return True

    def contains(self, vec: dict[int, Fraction]) -> bool:
        return not self._reduce(dict(vec))

    def contains_module_element(self, polys: Sequence[Poly]) -> bool:
        if len(polys) != self.ambient_rank:
            raise ValueError(
                f"ambient rank mismatch: {len(polys)} components vs {self.ambient_rank}"
            )
        return self.contains(self.context.module_coords(polys))

    def echelon_rows(self) -> list[dict[int, Fraction]]:
        """Rows sorted by pivot; canonical representation of the subspace."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient_rank == other.ambient_rank
            and self.context.truncation == other.context.truncation
            and self.context.nvars == other.context.nvars
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return (
            f"SubspaceBasis(dim={self.dimension}, rank={self.ambient_rank}, "
            f"D={self.context.truncation})"
        )


def span(
    vectors: Iterable[Sequence[Poly]], context: JetContext, ambient_rank: int
) -> SubspaceBasis:
    """k-span of all monomial multiples of the given module elements.

    This is the image in the jet module of the R-submodule generated by the
    vectors: multiplying by every basis monomial of degree < D closes the
    k-span under the truncated R-action.
    """
    basis = SubspaceBasis(context, ambient_rank)
    size = context.dimension
    for vector in vectors:
        if len(vector) != ambient_rank:
            raise ValueError(
                f"generator has {len(vector)} components, expected {ambient_rank}"
            )
        for mono in context.basis:
            coords: dict[int, Fraction] = {}
            for component, poly in enumerate(vector):
                offset = component * size
                for m, c in poly.terms.items():
                    shifted = tuple(a + b for a, b in zip(m, mono))
                    if mono_degree(shifted) < context.truncation:
                        coords[offset + context.index[shifted]] = coords.get(
                            offset + context.index[shifted], _ZERO
                        ) + c
            if coords:
                basis.insert({k: v for k, v in coords.items() if v != 0})
    return basis


def member(vector: Sequence[Poly], subspace: SubspaceBasis) -> bool:
    """Exact membership of a (truncated) module element in the span."""
    return subspace.contains_module_element(vector)
