"""Tangent spaces to group orbits and certified power tests against them.

For each supported action the orbit tangent space at A is the R-span of a
finite list of matrices (products of A with elementary matrices).  Inside a
jet module those spans become exact linear algebra, and the question

    m^N * (deformation directions)  subset  (orbit tangent space)

is decided by span membership at a degree-faithful truncation, then lifted
to the formal ring by Nakayama.  These tests back every determinacy bound;
the truncated annihilator of the quotient module is also computed directly
as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ideals import CertifiedBool, Ideal
from .jets import JetContext, SubspaceBasis, span
from .matrixops import PolyMatrix, Structure, StructureError, _block_starts
from .poly import Monomial, Poly, monomials_of_degree


class GroupKind:
    GR = "Gr"
    GL = "Gl"
    GLR = "Glr"
    GCONGR = "Gcongr"
    GCONJ = "Gconj"
    GR_UP = "Gr_up"
    GLR_UP = "Glr_up"

    ALL = (GR, GL, GLR, GCONGR, GCONJ, GR_UP, GLR_UP)


@dataclass(frozen=True)
class GroupAction:
    """One of the supported matrix group actions, optionally unipotent.

    The unipotent subgroup acts as the identity modulo the maximal ideal;
    its orbit tangent space is m times the full one.
    """

    kind: str
    unipotent: bool = False

    def __post_init__(self):
        if self.kind not in GroupKind.ALL:
            raise ValueError(f"unknown group kind {self.kind!r}")


class SigmaKind:
    FULL = "full"
    SYM = "sym"
    SKEW = "skew"
    UPPER = "upper"

    ALL = (FULL, SYM, SKEW, UPPER)


@dataclass(frozen=True)
class SigmaSpace:
    """The allowed deformation directions: a free summand of the matrix space,
    optionally shifted by an ideal (directions J * base)."""

    kind: str
    shift: Ideal | None = None

    def __post_init__(self):
        if self.kind not in SigmaKind.ALL:
            raise ValueError(f"unknown deformation space {self.kind!r}")

    def base(self) -> "SigmaSpace":
        return SigmaSpace(self.kind)


def _elementary(nvars: int, rows: int, cols: int, i: int, j: int, coeff=1) -> PolyMatrix:
    zero = Poly.zero(nvars)
    grid = [[zero] * cols for _ in range(rows)]
    grid[i][j] = Poly.constant(nvars, coeff)
    return PolyMatrix(nvars, grid)


def _upper_positions(row_blocks: Sequence[int], col_blocks: Sequence[int]) -> list[tuple[int, int]]:
    """Index pairs inside the upper-block-triangular pattern."""
    starts_r = _block_starts(row_blocks)
    starts_c = _block_starts(col_blocks)
    positions = []
    for bi, rb in enumerate(row_blocks):
        for bj in range(bi, len(col_blocks)):
            cb = col_blocks[bj]
            for i in range(starts_r[bi], starts_r[bi] + rb):
                for j in range(starts_c[bj], starts_c[bj] + cb):
                    positions.append((i, j))
    return positions


def _square_upper_positions(blocks: Sequence[int]) -> list[tuple[int, int]]:
    return _upper_positions(blocks, blocks)


def check_compatibility(matrix: PolyMatrix, action: GroupAction, sigma: SigmaSpace) -> None:
    kind = action.kind
    if kind in (GroupKind.GCONGR, GroupKind.GCONJ) and matrix.rows != matrix.cols:
        raise StructureError(f"{kind} acts on square matrices")
    if kind in (GroupKind.GR_UP, GroupKind.GLR_UP) and matrix.structure.kind != Structure.UPPER:
        raise StructureError(f"{kind} needs an upper-block-triangular matrix")
    base = sigma.kind
    if base == SigmaKind.SYM and matrix.structure.kind != Structure.SYM:
        raise StructureError("symmetric deformations need a symmetric matrix")
    if base == SigmaKind.SKEW and matrix.structure.kind != Structure.SKEW:
        raise StructureError("skew deformations need a skew-symmetric matrix")
    if base == SigmaKind.UPPER and matrix.structure.kind != Structure.UPPER:
        raise StructureError("upper deformations need an upper-block-triangular matrix")


def tangent_generators(matrix: PolyMatrix, action: GroupAction) -> list[PolyMatrix]:
    """R-module generators of the orbit tangent space at the matrix.

    Right multiplication contributes A * e_ij over elementary n x n matrices,
    left multiplication e_ij * A, congruence e_ij * A + A * e_ij^T,
    conjugation e_ij * A - A * e_ij; the upper variants restrict (i, j) to
    the upper-block pattern.  Unipotent actions multiply everything by every
    variable.
    """
    nvars = matrix.nvars
    m, n = matrix.rows, matrix.cols
    kind = action.kind
    gens: list[PolyMatrix] = []

    def right_positions() -> Iterable[tuple[int, int]]:
        if kind == GroupKind.GR_UP or kind == GroupKind.GLR_UP:
            blocks = matrix.structure.col_blocks or (n,)
            return _square_upper_positions(blocks)
        return ((i, j) for i in range(n) for j in range(n))

    def left_positions() -> Iterable[tuple[int, int]]:
        if kind == GroupKind.GLR_UP:
            blocks = matrix.structure.row_blocks or (m,)
            return _square_upper_positions(blocks)
        return ((i, j) for i in range(m) for j in range(m))

    if kind in (GroupKind.GR, GroupKind.GLR, GroupKind.GR_UP, GroupKind.GLR_UP):
        for i, j in right_positions():
            gens.append(matrix @ _elementary(nvars, n, n, i, j))
    if kind in (GroupKind.GL, GroupKind.GLR, GroupKind.GLR_UP):
        for i, j in left_positions():
            gens.append(_elementary(nvars, m, m, i, j) @ matrix)
    if kind == GroupKind.GCONGR:
        for i in range(m):
            for j in range(m):
                e = _elementary(nvars, m, m, i, j)
                gens.append((e @ matrix) + (matrix @ e.transpose()))
    if kind == GroupKind.GCONJ:
        for i in range(m):
            for j in range(m):
                e = _elementary(nvars, m, m, i, j)
                gens.append((e @ matrix) - (matrix @ e))
    if action.unipotent:
        variables = [Poly.variable(nvars, v) for v in range(nvars)]
        gens = [g.mul_poly(x) for g in gens for x in variables]
    return gens


def sigma_basis(
    shape: tuple[int, int],
    sigma: SigmaSpace,
    nvars: int,
    structure: Structure | None = None,
) -> list[PolyMatrix]:
    """R-module generators of the deformation directions."""
    m, n = shape
    base: list[PolyMatrix] = []
    if sigma.kind == SigmaKind.FULL:
        base = [_elementary(nvars, m, n, i, j) for i in range(m) for j in range(n)]
    elif sigma.kind == SigmaKind.SYM:
        for i in range(m):
            for j in range(i, n):
                e = _elementary(nvars, m, n, i, j)
                base.append(e if i == j else e + _elementary(nvars, m, n, j, i))
    elif sigma.kind == SigmaKind.SKEW:
        for i in range(m):
            for j in range(i + 1, n):
                base.append(
                    _elementary(nvars, m, n, i, j) + _elementary(nvars, m, n, j, i, -1)
                )
    elif sigma.kind == SigmaKind.UPPER:
        if structure is None or structure.kind != Structure.UPPER:
            raise StructureError("upper deformations need the block structure")
        positions = _upper_positions(structure.row_blocks or (), structure.col_blocks or ())
        base = [_elementary(nvars, m, n, i, j) for i, j in positions]
    if sigma.shift is not None:
        base = [b.mul_poly(g) for g in sigma.shift.generators for b in base]
    return base


def _matrix_vector(matrix: PolyMatrix) -> tuple[Poly, ...]:
    return tuple(e for row in matrix.entries for e in row)


def _max_degree(matrices: Iterable[PolyMatrix]) -> int:
    return max((m.max_entry_degree() for m in matrices), default=-1)


def matrix_span(
    matrices: Sequence[PolyMatrix], context: JetContext, shape: tuple[int, int]
) -> SubspaceBasis:
    rank = shape[0] * shape[1]
    return span([_matrix_vector(g) for g in matrices], context, rank)


def t1_contains_power(
    matrix: PolyMatrix,
    action: GroupAction,
    sigma: SigmaSpace,
    power: int,
) -> CertifiedBool:
    """Decide m^power * T_Sigma subset T_(orbit) over the formal ring.

    Truncation is power + 1 + the largest entry degree among the matrix, the
    tangent generators and the deformation generators, so every product in
    the Nakayama step is degree-faithful.  Both spaces live inside the free
    summand spanned by the deformation directions, which is what makes the
    Nakayama lift valid.
    """
    if power < 0:
        raise ValueError("negative power")
    check_compatibility(matrix, action, sigma)
    gens = tangent_generators(matrix, action)
    directions = sigma_basis((matrix.rows, matrix.cols), sigma, matrix.nvars, matrix.structure)
    if not directions:
        return CertifiedBool(True, power + 1, "no deformation directions")
    degree = max(matrix.max_entry_degree(), _max_degree(gens), _max_degree(directions), 0)
    truncation = power + 1 + degree
    context = JetContext(matrix.nvars, truncation)
    basis = matrix_span(gens, context, (matrix.rows, matrix.cols))
    for mono in monomials_of_degree(matrix.nvars, power):
        shift = Poly.monomial(mono)
        for index, direction in enumerate(directions):
            candidate = direction.mul_poly(shift)
            if not basis.contains_module_element(_matrix_vector(candidate)):
                witness = f"{shift.to_string()} * sigma[{index}]"
                return CertifiedBool(False, truncation, f"witness {witness} escapes the tangent span")
    return CertifiedBool(True, truncation, f"all products inside the span; Nakayama at degree {truncation}")


def minimal_certified_power(
    test, n_max: int
) -> tuple[int | None, CertifiedBool | None]:
    """Smallest N <= n_max with test(N) true; powers are nested so the first
    hit is the Loewy length of the tested annihilator."""
    last = None
    for power in range(n_max + 1):
        result = test(power)
        last = result
        if result:
            return power, result
    return None, last


def t1_ann_jet(
    matrix: PolyMatrix,
    action: GroupAction,
    sigma: SigmaSpace,
    context: JetContext,
) -> list[Poly]:
    """Truncated annihilator of T_Sigma / T_(orbit) inside the jet algebra.

    Returns an echelonized basis of the jet polynomials f with
    f * (every deformation generator) inside the tangent span.  This is an
    oracle for cross-checks: a truncated annihilator may strictly contain the
    truncation of the formal one, so certified statements always go through
    the power tests instead.
    """
    check_compatibility(matrix, action, sigma)
    gens = tangent_generators(matrix, action)
    directions = sigma_basis((matrix.rows, matrix.cols), sigma, matrix.nvars, matrix.structure)
    shape = (matrix.rows, matrix.cols)
    basis = matrix_span(gens, context, shape)
    block = context.dimension * shape[0] * shape[1]

    # kernel via augmentation: residuals of b * sigma_k carry their jet
    # coefficient vector along; a zero residual row is an annihilator element
    tracked = SubspaceBasis(context, 1)  # ambient rank unused for raw coords
    kernel: list[dict[int, Fraction]] = []
    aug_offset = block * len(directions)
    for b_index, mono in enumerate(context.basis):
        shift = Poly.monomial(mono)
        coords: dict[int, Fraction] = {}
        for d_index, direction in enumerate(directions):
            moved = direction.mul_poly(shift)
            vec = context.module_coords(_matrix_vector(moved))
            reduced = basis._reduce(dict(vec))
            for idx, value in reduced.items():
                coords[d_index * block + idx] = value
        coords[aug_offset + b_index] = Fraction(1)
        residual = tracked._reduce(dict(coords))
        if all(idx >= aug_offset for idx in residual):
            kernel.append({idx - aug_offset: v for idx, v in residual.items()})
        else:
            lead = min(residual)
            inv = 1 / residual[lead]
            tracked.rows[lead] = {i: inv * v for i, v in residual.items()}
    echelon = SubspaceBasis(context, 1)
    for vec in kernel:
        echelon.insert(dict(vec))
    return [context.coords_to_poly(row) for row in echelon.echelon_rows()]


def t1_jet_dimension(
    matrix: PolyMatrix,
    action: GroupAction,
    sigma: SigmaSpace,
    context: JetContext,
) -> int:
    """k-dimension of (T_Sigma / T_orbit) truncated at the context degree."""
    check_compatibility(matrix, action, sigma)
    gens = tangent_generators(matrix, action)
    directions = sigma_basis((matrix.rows, matrix.cols), sigma, matrix.nvars, matrix.structure)
    shape = (matrix.rows, matrix.cols)
    return (
        matrix_span(directions, context, shape).dimension
        - matrix_span(gens, context, shape).dimension
    )


# -- cokernel-annihilator tests -------------------------------------------------


def _column_generators(matrix: PolyMatrix, restricted: bool) -> list[tuple[Poly, ...]]:
    columns = [matrix.column(j) for j in range(matrix.cols)]
    if not restricted:
        return columns
    variables = [Poly.variable(matrix.nvars, v) for v in range(matrix.nvars)]
    return [tuple(x * e for e in col) for col in columns for x in variables]


def ann_coker_contains_power(
    matrix: PolyMatrix, power: int, restricted: bool = False
) -> CertifiedBool:
    """Decide m^power * R^m subset Im(A), or subset m * Im(A) when restricted.

    The image is spanned by the columns (restricted: variables times
    columns); each degree-power monomial times each standard basis vector is
    tested in the jet span of those generators.
    """
    if power < 0:
        raise ValueError("negative power")
    gens = _column_generators(matrix, restricted)
    degree = max((max(e.total_degree() for e in g) for g in gens), default=0)
    truncation = power + 1 + max(degree, 0)
    context = JetContext(matrix.nvars, truncation)
    basis = span(gens, context, matrix.rows)
    zero = Poly.zero(matrix.nvars)
    for mono in monomials_of_degree(matrix.nvars, power):
        shift = Poly.monomial(mono)
        for i in range(matrix.rows):
            target = tuple(shift if r == i else zero for r in range(matrix.rows))
            if not basis.contains_module_element(target):
                witness = f"{shift.to_string()} * e_{i}"
                return CertifiedBool(False, truncation, f"witness {witness} escapes the column span")
    return CertifiedBool(True, truncation, f"m^{power} * R^m inside the column span; Nakayama at degree {truncation}")


def relative_gr_contains_power(
    matrix: PolyMatrix, shift_ideal: Ideal, power: int, restricted: bool = False
) -> CertifiedBool:
    """Decide m^power * J * R^m subset Im(A) (restricted: subset m * Im(A)).

    This is the right-multiplication relative test: the annihilator of the
    relative quotient is ann.coker(A) : J, and m^power lands in it exactly
    when these products lie in the column span.
    """
    if power < 0:
        raise ValueError("negative power")
    if shift_ideal.is_zero():
        return CertifiedBool(True, power + 1, "zero shift ideal: containment is trivial")
    gens = _column_generators(matrix, restricted)
    degree = max((max(e.total_degree() for e in g) for g in gens), default=0)
    truncation = power + 1 + max(degree, 0) + max(shift_ideal.max_generator_degree(), 0)
    context = JetContext(matrix.nvars, truncation)
    basis = span(gens, context, matrix.rows)
    zero = Poly.zero(matrix.nvars)
    for mono in monomials_of_degree(matrix.nvars, power):
        shift = Poly.monomial(mono)
        for g in shift_ideal.generators:
            factor = shift * g
            for i in range(matrix.rows):
                target = tuple(factor if r == i else zero for r in range(matrix.rows))
                if not basis.contains_module_element(target):
                    witness = f"({shift.to_string()})*({g.to_string()}) * e_{i}"
                    return CertifiedBool(False, truncation, f"witness {witness} escapes the column span")
    return CertifiedBool(True, truncation, f"m^{power} * J * R^m inside the column span; Nakayama at degree {truncation}")


def t1_relative_contains_power(
    matrix: PolyMatrix,
    action: GroupAction,
    sigma: SigmaSpace,
    shift_ideal: Ideal,
    group_ideal: Ideal,
    power: int,
) -> CertifiedBool:
    """Decide m^power * J * T_Sigma subset I * T_(orbit).

    J shifts the deformation space, I cuts the group down to transformations
    that are identities modulo I; the tangent space of that subgroup is I
    times the full one.
    """
    if power < 0:
        raise ValueError("negative power")
    check_compatibility(matrix, action, sigma)
    if shift_ideal.is_zero():
        return CertifiedBool(True, power + 1, "zero shift ideal: containment is trivial")
    base_gens = tangent_generators(matrix, action)
    gens = [g.mul_poly(f) for f in group_ideal.generators for g in base_gens]
    directions = sigma_basis(
        (matrix.rows, matrix.cols), SigmaSpace(sigma.kind, shift_ideal), matrix.nvars, matrix.structure
    )
    if not directions:
        return CertifiedBool(True, power + 1, "no deformation directions")
    degree = max(matrix.max_entry_degree(), _max_degree(gens), _max_degree(directions), 0)
    truncation = power + 1 + degree
    context = JetContext(matrix.nvars, truncation)
    basis = matrix_span(gens, context, (matrix.rows, matrix.cols))
    for mono in monomials_of_degree(matrix.nvars, power):
        shift = Poly.monomial(mono)
        for index, direction in enumerate(directions):
            candidate = direction.mul_poly(shift)
            if not basis.contains_module_element(_matrix_vector(candidate)):
                witness = f"{shift.to_string()} * shifted-sigma[{index}]"
                return CertifiedBool(False, truncation, f"witness {witness} escapes the restricted tangent span")
    return CertifiedBool(True, truncation, f"all products inside the span; Nakayama at degree {truncation}")


# -- chains of module maps -------------------------------------------------------


@dataclass(frozen=True)
class ChainBounds:
    """Certified bounds for simultaneous equivalence of a chain of maps.

    The lower test certifies m^N inside every restricted cokernel
    annihilator at once; the upper ideal intersects the closure colon ideals
    of the individual maps when every determinantal ideal involved is
    monomial, and is None otherwise.
    """

    maps: tuple[PolyMatrix, ...]
    upper: Ideal | None
    upper_note: str

    def lower_test(self, power: int) -> CertifiedBool:
        worst: CertifiedBool | None = None
        for matrix in self.maps:
            result = ann_coker_contains_power(matrix, power, restricted=True)
            if not result:
                return result
            if worst is None or result.truncation_used > worst.truncation_used:
                worst = result
        return worst or CertifiedBool(True, power + 1, "empty chain")


def chain_bounds(maps: Sequence[PolyMatrix]) -> ChainBounds:
    from .closure import closure_colon
    from .ideals import colon_monomial
    from .matrixops import determinantal_ideal

    upper: Ideal | None = None
    note = "intersection of closure colon ideals over the chain"
    for matrix in maps:
        size = matrix.rows
        top = determinantal_ideal(matrix, size)
        below = determinantal_ideal(matrix, size - 1)
        if top.is_zero() or not top.is_monomial or not below.is_monomial:
            upper = None
            note = "closure colon unavailable: a determinantal ideal is zero or not monomial"
            break
        piece = closure_colon(top, below)
        upper = piece if upper is None else _intersect_ideals(upper, piece)
    return ChainBounds(tuple(maps), upper, note)


def _intersect_ideals(a: Ideal, b: Ideal) -> Ideal:
    from .ideals import _intersect_monomial

    gens = _intersect_monomial(
        a.monomial_exponents(), b.monomial_exponents()
    )
    return Ideal.from_monomials(a.nvars, gens)
