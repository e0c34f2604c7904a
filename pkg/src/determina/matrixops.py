"""Matrices of polynomials: minors, Pfaffians, unit-block splitting.

The structure tag records how a matrix is allowed to move: general matrices
follow the m <= n convention, symmetric and skew-symmetric matrices are
square, and upper-block-triangular matrices carry their block compositions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .ideals import Ideal
from .poly import Poly, poly_parse


class StructureError(ValueError):
    """A matrix violates its declared structure."""


@dataclass(frozen=True)
class Structure:
    kind: str  # general | sym | skew | upper
    row_blocks: tuple[int, ...] | None = None
    col_blocks: tuple[int, ...] | None = None

    GENERAL = "general"
    SYM = "sym"
    SKEW = "skew"
    UPPER = "upper"


def general() -> Structure:
    return Structure(Structure.GENERAL)


def symmetric() -> Structure:
    return Structure(Structure.SYM)


def skew_symmetric() -> Structure:
    return Structure(Structure.SKEW)


def upper_blocks(row_blocks: Sequence[int], col_blocks: Sequence[int]) -> Structure:
    return Structure(Structure.UPPER, tuple(row_blocks), tuple(col_blocks))


class PolyMatrix:
    """An m x n matrix of polynomials with a structure tag."""

    __slots__ = ("nvars", "rows", "cols", "entries", "structure")

    def __init__(
        self,
        nvars: int,
        entries: Sequence[Sequence[Poly]],
        structure: Structure | None = None,
    ):
        structure = structure or general()
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        grid = []
        for row in entries:
            if len(row) != cols:
                raise StructureError("ragged rows")
            for e in row:
                if e.nvars != nvars:
                    raise StructureError("entry has wrong variable count")
            grid.append(tuple(row))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(grid))
        object.__setattr__(self, "structure", structure)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def _validate(self) -> None:
        kind = self.structure.kind
        if kind == Structure.GENERAL:
            if self.rows > self.cols:
                raise StructureError(
                    f"general matrices follow the m <= n convention; transpose the "
                    f"{self.rows}x{self.cols} input"
                )
        elif kind == Structure.SYM:
            if self.rows != self.cols:
                raise StructureError("symmetric matrices are square")
            for i in range(self.rows):
                for j in range(i + 1, self.cols):
                    if self.entries[i][j] != self.entries[j][i]:
                        raise StructureError(f"symmetry fails at entry ({i}, {j})")
        elif kind == Structure.SKEW:
            if self.rows != self.cols:
                raise StructureError("skew-symmetric matrices are square")
            for i in range(self.rows):
                if not self.entries[i][i].is_zero():
                    raise StructureError(f"nonzero diagonal at entry ({i}, {i})")
                for j in range(i + 1, self.cols):
                    if self.entries[i][j] != -self.entries[j][i]:
                        raise StructureError(f"skew-symmetry fails at entry ({i}, {j})")
        elif kind == Structure.UPPER:
            rb, cb = self.structure.row_blocks, self.structure.col_blocks
            if rb is None or cb is None or len(rb) != len(cb):
                raise StructureError("upper structure needs matching block lists")
            if sum(rb) != self.rows or sum(cb) != self.cols:
                raise StructureError("block sizes do not sum to the matrix shape")
            starts_r = _block_starts(rb)
            starts_c = _block_starts(cb)
            for bi in range(len(rb)):
                for bj in range(bi):
                    for i in range(starts_r[bi], starts_r[bi] + rb[bi]):
                        for j in range(starts_c[bj], starts_c[bj] + cb[bj]):
                            if not self.entries[i][j].is_zero():
                                raise StructureError(
                                    f"entry ({i}, {j}) below the block diagonal is nonzero"
                                )
        else:
            raise StructureError(f"unknown structure kind {kind!r}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(nvars: int, entries, structure: Structure | None = None) -> "PolyMatrix":
        return PolyMatrix(nvars, entries, structure)

    @staticmethod
    def identity(nvars: int, size: int) -> "PolyMatrix":
        one = Poly.constant(nvars, 1)
        zero = Poly.zero(nvars)
        return PolyMatrix(
            nvars,
            [[one if i == j else zero for j in range(size)] for i in range(size)],
        )

    @staticmethod
    def zero_matrix(nvars: int, rows: int, cols: int, structure: Structure | None = None) -> "PolyMatrix":
        zero = Poly.zero(nvars)
        return PolyMatrix(nvars, [[zero] * cols for _ in range(rows)], structure)

    # -- basic operations ----------------------------------------------------

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Poly, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.nvars,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def map_entries(self, fn: Callable[[Poly], Poly], structure: Structure | None = None) -> "PolyMatrix":
        return PolyMatrix(
            self.nvars,
            [[fn(e) for e in row] for row in self.entries],
            structure if structure is not None else self.structure,
        )

    def truncate(self, degree_bound: int) -> "PolyMatrix":
        return self.map_entries(lambda e: e.truncate(degree_bound))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise StructureError("shape mismatch")
        return PolyMatrix(
            self.nvars,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise StructureError("shape mismatch")
        return PolyMatrix(
            self.nvars,
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise StructureError("inner dimensions disagree")
        zero = Poly.zero(self.nvars)
        out = []
        for i in range(self.rows):
            out_row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                out_row.append(acc)
            out.append(out_row)
        return PolyMatrix(self.nvars, out)

    def scale(self, value) -> "PolyMatrix":
        return self.map_entries(lambda e: e.scale(value))

    def mul_poly(self, poly: Poly) -> "PolyMatrix":
        return self.map_entries(lambda e: e * poly)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def max_entry_degree(self) -> int:
        return max((e.total_degree() for row in self.entries for e in row), default=-1)

    def min_entry_order(self) -> int | float:
        return min((e.order() for row in self.entries for e in row), default=float("inf"))

    def constant_part(self) -> list[list[Fraction]]:
        return [[e.constant_term() for e in row] for row in self.entries]

    def constant_rank(self) -> int:
        """Rank of the matrix of constant terms over k."""
        m = [row[:] for row in self.constant_part()]
        rank = 0
        for col in range(self.cols):
            pivot = next((r for r in range(rank, self.rows) if m[r][col] != 0), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            inv = 1 / m[rank][col]
            m[rank] = [v * inv for v in m[rank]]
            for r in range(self.rows):
                if r != rank and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def with_structure(self, structure: Structure) -> "PolyMatrix":
        return PolyMatrix(self.nvars, self.entries, structure)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.nvars == other.nvars
            and self.entries == other.entries
            and self.structure == other.structure
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(e.to_string() for e in row) for row in self.entries
        )
        return f"PolyMatrix[{body}]"

    # -- JSON interchange ----------------------------------------------------

    def to_json_dict(self, names: Sequence[str]) -> dict:
        names = tuple(names)
        payload: dict = {
            "vars": list(names),
            "matrix": [[e.to_string(names) for e in row] for row in self.entries],
            "structure": self.structure.kind,
        }
        if self.structure.kind == Structure.UPPER:
            payload["blocks"] = {
                "rows": list(self.structure.row_blocks or ()),
                "cols": list(self.structure.col_blocks or ()),
            }
        return payload

    def to_json(self, names: Sequence[str]) -> str:
        return json.dumps(self.to_json_dict(names), sort_keys=True)


def matrix_from_json_dict(payload: dict) -> tuple[PolyMatrix, tuple[str, ...]]:
    names = tuple(payload["vars"])
    kind = payload.get("structure", Structure.GENERAL)
    if kind == Structure.UPPER:
        blocks = payload.get("blocks") or {}
        structure = upper_blocks(blocks.get("rows", []), blocks.get("cols", []))
    elif kind in (Structure.GENERAL, Structure.SYM, Structure.SKEW):
        structure = Structure(kind)
    else:
        raise StructureError(f"unknown structure {kind!r}")
    entries = [
        [poly_parse(text, names) for text in row] for row in payload["matrix"]
    ]
    return PolyMatrix(len(names), entries, structure), names


def _block_starts(blocks: Sequence[int]) -> list[int]:
    starts = [0]
    for b in blocks[:-1]:
        starts.append(starts[-1] + b)
    return starts


# -- determinantal ideals ------------------------------------------------------


def _minor(matrix: PolyMatrix, row_idx: tuple[int, ...], col_idx: tuple[int, ...], memo: dict) -> Poly:
    key = (row_idx, col_idx)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if not row_idx:
        result = Poly.constant(matrix.nvars, 1)
    else:
        result = Poly.zero(matrix.nvars)
        r = row_idx[0]
        rest = row_idx[1:]
        for t, c in enumerate(col_idx):
            entry = matrix.entries[r][c]
            if entry.is_zero():
                continue
            sub = _minor(matrix, rest, col_idx[:t] + col_idx[t + 1 :], memo)
            term = entry * sub
            result = result + (term if t % 2 == 0 else -term)
    memo[key] = result
    return result


def determinant(matrix: PolyMatrix) -> Poly:
    if matrix.rows != matrix.cols:
        raise StructureError("determinant needs a square matrix")
    memo: dict = {}
    return _minor(matrix, tuple(range(matrix.rows)), tuple(range(matrix.cols)), memo)


def determinantal_ideal(matrix: PolyMatrix, size: int) -> Ideal:
    """Ideal of all size x size minors; (1) for size <= 0 and (0) past the shape."""
    if size <= 0:
        return Ideal.unit(matrix.nvars)
    if size > min(matrix.rows, matrix.cols):
        return Ideal.zero(matrix.nvars)
    memo: dict = {}
    from itertools import combinations

    gens = []
    for row_idx in combinations(range(matrix.rows), size):
        for col_idx in combinations(range(matrix.cols), size):
            gens.append(_minor(matrix, row_idx, col_idx, memo))
    return Ideal(matrix.nvars, gens)


# -- Pfaffians -----------------------------------------------------------------


def _pfaffian_indices(matrix: PolyMatrix, idx: tuple[int, ...], memo: dict) -> Poly:
    if not idx:
        return Poly.constant(matrix.nvars, 1)
    cached = memo.get(idx)
    if cached is not None:
        return cached
    first = idx[0]
    total = Poly.zero(matrix.nvars)
    for t in range(1, len(idx)):
        j = idx[t]
        entry = matrix.entries[first][j]
        if entry.is_zero():
            continue
        rest = tuple(v for v in idx if v != first and v != j)
        term = entry * _pfaffian_indices(matrix, rest, memo)
        total = total + (term if t % 2 == 1 else -term)
    memo[idx] = total
    return total


def _require_skew(matrix: PolyMatrix) -> None:
    if matrix.structure.kind != Structure.SKEW:
        raise StructureError("Pfaffian machinery needs the skew structure tag")


def pfaffian(matrix: PolyMatrix) -> Poly:
    """Pfaffian of an even skew-symmetric matrix by expansion along the first row."""
    _require_skew(matrix)
    if matrix.rows % 2 != 0:
        raise StructureError("Pfaffian needs an even size")
    memo: dict = {}
    return _pfaffian_indices(matrix, tuple(range(matrix.rows)), memo)


def pfaffian_sub_ideal(matrix: PolyMatrix) -> Ideal:
    """For odd skew size m, the ideal of the m Pfaffians with row/column i erased."""
    _require_skew(matrix)
    m = matrix.rows
    if m % 2 != 1 or m <= 1:
        raise StructureError("sub-Pfaffian ideal needs odd size at least 3")
    memo: dict = {}
    gens = []
    for i in range(m):
        idx = tuple(v for v in range(m) if v != i)
        gens.append(_pfaffian_indices(matrix, idx, memo))
    return Ideal(matrix.nvars, gens)


def pfaffian_adjugate(matrix: PolyMatrix) -> PolyMatrix:
    """The skew matrix B with A @ B = Pf(A) * identity = B @ A.

    Entries are signed sub-Pfaffians; the overall sign is fixed by checking
    the defining identity and flipping once if needed.  A residual mismatch
    after the flip means the construction itself is broken.
    """
    _require_skew(matrix)
    m = matrix.rows
    if m % 2 != 0:
        raise StructureError("Pfaffian adjugate needs an even size")
    memo: dict = {}
    zero = Poly.zero(matrix.nvars)
    grid = [[zero for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rest = tuple(v for v in range(m) if v != i and v != j)
            value = _pfaffian_indices(matrix, rest, memo)
            if (i + j) % 2 == 1:
                value = -value
            grid[i][j] = value
            grid[j][i] = -value
    adjugate = PolyMatrix(matrix.nvars, grid, skew_symmetric())
    pf = _pfaffian_indices(matrix, tuple(range(m)), memo)
    target = PolyMatrix.identity(matrix.nvars, m).mul_poly(pf)
    product = matrix @ adjugate
    if product == target:
        return adjugate
    flipped = adjugate.scale(-1).with_structure(skew_symmetric())
    if matrix @ flipped == target:
        return flipped
    raise AssertionError("Pfaffian adjugate identity failed for both signs")


# -- unit-block splitting ------------------------------------------------------


def poly_inverse_unit(poly: Poly, degree_bound: int) -> Poly:
    """Inverse of a unit modulo m^degree_bound via the geometric series."""
    c = poly.constant_term()
    if c == 0:
        raise ValueError("not a unit: zero constant term")
    tail = Poly.constant(poly.nvars, 1) - poly.scale(1 / c)  # order >= 1
    tail = tail.truncate(degree_bound)
    result = Poly.constant(poly.nvars, 1)
    power = Poly.constant(poly.nvars, 1)
    for _ in range(1, degree_bound):
        power = (power * tail).truncate(degree_bound)
        if power.is_zero():
            break
        result = result + power
    return result.scale(1 / c).truncate(degree_bound)


class _Worksheet:
    """Mutable elimination state: B tracks U @ A @ V modulo m^D."""

    def __init__(self, matrix: PolyMatrix, degree_bound: int):
        self.nvars = matrix.nvars
        self.bound = degree_bound
        self.b = [[e.truncate(degree_bound) for e in row] for row in matrix.entries]
        self.u = [list(row) for row in PolyMatrix.identity(matrix.nvars, matrix.rows).entries]
        self.v = [list(row) for row in PolyMatrix.identity(matrix.nvars, matrix.cols).entries]

    def _trunc(self, poly: Poly) -> Poly:
        return poly.truncate(self.bound)

    def swap_rows(self, a: int, b: int) -> None:
        if a != b:
            self.b[a], self.b[b] = self.b[b], self.b[a]
            self.u[a], self.u[b] = self.u[b], self.u[a]

    def swap_cols(self, a: int, b: int) -> None:
        if a != b:
            for row in self.b:
                row[a], row[b] = row[b], row[a]
            for row in self.v:
                row[a], row[b] = row[b], row[a]

    def scale_row(self, i: int, factor: Poly) -> None:
        self.b[i] = [self._trunc(factor * e) for e in self.b[i]]
        self.u[i] = [self._trunc(factor * e) for e in self.u[i]]

    def scale_col(self, j: int, factor: Poly) -> None:
        for row in self.b:
            row[j] = self._trunc(factor * row[j])
        for row in self.v:
            row[j] = self._trunc(factor * row[j])

    def add_row(self, target: int, source: int, factor: Poly) -> None:
        self.b[target] = [
            self._trunc(e + factor * f) for e, f in zip(self.b[target], self.b[source])
        ]
        self.u[target] = [
            self._trunc(e + factor * f) for e, f in zip(self.u[target], self.u[source])
        ]

    def add_col(self, target: int, source: int, factor: Poly) -> None:
        for row in self.b:
            row[target] = self._trunc(row[target] + factor * row[source])
        for row in self.v:
            row[target] = self._trunc(row[target] + factor * row[source])

    def matrices(self) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
        return (
            PolyMatrix(self.nvars, self.b),
            PolyMatrix(self.nvars, self.u),
            PolyMatrix(self.nvars, self.v),
        )


def split_unit_part(
    matrix: PolyMatrix, degree_bound: int
) -> tuple[int, PolyMatrix, PolyMatrix, PolyMatrix]:
    """Split off the unit block: U @ A @ V = 1_r (+) Atilde modulo m^D.

    r is the rank of the constant part; the remaining block has all entries
    in the maximal ideal.  U and V are invertible over the jet ring.
    """
    ws = _Worksheet(matrix, degree_bound)
    m, n = matrix.rows, matrix.cols
    step = 0
    while step < min(m, n):
        pivot = None
        for i in range(step, m):
            for j in range(step, n):
                if ws.b[i][j].constant_term() != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ws.swap_rows(step, pivot[0])
        ws.swap_cols(step, pivot[1])
        ws.scale_row(step, poly_inverse_unit(ws.b[step][step], degree_bound))
        for i in range(m):
            if i != step and not ws.b[i][step].is_zero():
                ws.add_row(i, step, -ws.b[i][step])
        for j in range(n):
            if j != step and not ws.b[step][j].is_zero():
                ws.add_col(j, step, -ws.b[step][j])
        step += 1
    rank = step
    b, u, v = ws.matrices()
    tail = PolyMatrix(
        matrix.nvars,
        [[b.entries[i][j] for j in range(rank, n)] for i in range(rank, m)],
    ) if rank < m and rank < n else PolyMatrix.zero_matrix(matrix.nvars, m - rank, n - rank)
    return rank, tail, u, v


def congruent_split_unit(
    matrix: PolyMatrix, degree_bound: int
) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
    """Congruence split U @ A @ U^T = regular (+) Atilde modulo m^D.

    Symmetric input gets a diagonal regular part of units via
    completing-the-square pivots (char 0); skew input gets unit-coefficient
    2x2 symplectic blocks.  The tail has all entries in the maximal ideal.
    Returns (U, regular_part, Atilde).
    """
    kind = matrix.structure.kind
    if kind not in (Structure.SYM, Structure.SKEW):
        raise StructureError("congruence split needs a symmetric or skew matrix")
    m = matrix.rows
    ws = _Worksheet(matrix, degree_bound)

    def congr_swap(a: int, b: int) -> None:
        ws.swap_rows(a, b)
        ws.swap_cols(a, b)

    def congr_add(target: int, source: int, factor: Poly) -> None:
        ws.add_row(target, source, factor)
        ws.add_col(target, source, factor)

    step = 0
    if kind == Structure.SYM:
        while step < m:
            unit_diag = next(
                (i for i in range(step, m) if ws.b[i][i].constant_term() != 0), None
            )
            if unit_diag is None:
                off = None
                for i in range(step, m):
                    for j in range(i + 1, m):
                        if ws.b[i][j].constant_term() != 0:
                            off = (i, j)
                            break
                    if off:
                        break
                if off is None:
                    break
                # char 0: adding row+col j to i makes the (i, i) entry a unit
                congr_add(off[0], off[1], Poly.constant(matrix.nvars, 1))
                unit_diag = off[0]
            congr_swap(step, unit_diag)
            inv = poly_inverse_unit(ws.b[step][step], degree_bound)
            for i in range(step + 1, m):
                if not ws.b[i][step].is_zero():
                    congr_add(i, step, -(ws.b[i][step] * inv).truncate(degree_bound))
            step += 1
    else:
        while step + 1 < m:
            pair = None
            for i in range(step, m):
                for j in range(i + 1, m):
                    if ws.b[i][j].constant_term() != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break
            congr_swap(step, pair[0])
            congr_swap(step + 1, pair[1] if pair[1] != step else pair[0])
            lam_inv = poly_inverse_unit(ws.b[step][step + 1], degree_bound)
            for i in range(step + 2, m):
                alpha = -(ws.b[i][step + 1] * lam_inv).truncate(degree_bound)
                beta = (ws.b[i][step] * lam_inv).truncate(degree_bound)
                if not alpha.is_zero():
                    congr_add(i, step, alpha)
                if not beta.is_zero():
                    congr_add(i, step + 1, beta)
            step += 2

    b, u, _ = ws.matrices()
    regular = PolyMatrix(
        matrix.nvars, [[b.entries[i][j] for j in range(step)] for i in range(step)]
    ) if step else PolyMatrix.zero_matrix(matrix.nvars, 0, 0)
    tail_kind = symmetric() if kind == Structure.SYM else skew_symmetric()
    tail_entries = [[b.entries[i][j] for j in range(step, m)] for i in range(step, m)]
    tail = (
        PolyMatrix(matrix.nvars, tail_entries, tail_kind)
        if step < m
        else PolyMatrix.zero_matrix(matrix.nvars, 0, 0)
    )
    return u, regular, tail
