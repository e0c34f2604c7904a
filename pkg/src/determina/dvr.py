"""Canonical forms over the one-variable formal series ring k[[t]].

All computation happens modulo t^D for a caller-supplied D.  A pivot search
that runs out of visible terms raises :class:`TruncationInsufficientError`
instead of guessing; exactly-zero polynomial blocks are reported as such
(valuation None).

Diagonal entries of the Smith form are normalized to pure powers t^v (units
are absorbed into the transforms).  Congruence forms keep unit coefficients
on the diagonal blocks: over k = Q a unit has no square root in general, so
only the valuations are canonical there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrixops import (
    PolyMatrix,
    Structure,
    StructureError,
    _Worksheet,
    poly_inverse_unit,
)
from .poly import Poly


class TruncationInsufficientError(ValueError):
    """The working precision cannot see the next pivot."""

    def __init__(self, message: str, required: int):
        super().__init__(f"{message}; rerun with truncation > {required}")
        self.required = required


@dataclass(frozen=True)
class SeriesDVR:
    """A series in k[[t]] known modulo t^trunc."""

    value: Poly
    trunc: int

    def __post_init__(self):
        if self.value.nvars != 1:
            raise ValueError("series live in one variable")
        object.__setattr__(self, "value", self.value.truncate(self.trunc))

    @property
    def valuation(self) -> int | None:
        """Order in t, or None when nothing is visible below the truncation."""
        order = self.value.order()
        return None if order == float("inf") else int(order)

    def is_unit(self) -> bool:
        return self.valuation == 0

    def inverse(self) -> "SeriesDVR":
        return SeriesDVR(poly_inverse_unit(self.value, self.trunc), self.trunc)

    def __mul__(self, other: "SeriesDVR") -> "SeriesDVR":
        return SeriesDVR(self.value * other.value, min(self.trunc, other.trunc))

    def __add__(self, other: "SeriesDVR") -> "SeriesDVR":
        return SeriesDVR(self.value + other.value, min(self.trunc, other.trunc))


def _valuation(poly: Poly) -> int | None:
    order = poly.order()
    return None if order == float("inf") else int(order)


def _shift_down(poly: Poly, amount: int) -> Poly:
    """Exact division by t^amount; requires valuation >= amount."""
    if amount == 0:
        return poly
    terms = {}
    for (e,), c in poly.terms.items():
        if e < amount:
            raise ValueError("division by t^v needs valuation >= v")
        terms[(e - amount,)] = c
    return Poly(1, terms)


def _check_univariate(matrix: PolyMatrix) -> None:
    if matrix.nvars != 1:
        raise StructureError("DVR forms need univariate entries")


def _check_visibility(matrix: PolyMatrix, truncation: int) -> None:
    """Nonzero entries hidden above t^truncation poison every pivot search."""
    worst = None
    for row in matrix.entries:
        for entry in row:
            if not entry.is_zero() and entry.order() >= truncation:
                worst = max(worst or 0, int(entry.order()))
    if worst is not None:
        raise TruncationInsufficientError(
            "a nonzero entry is invisible below the truncation", worst
        )


def smith_normal_form(
    matrix: PolyMatrix, truncation: int
) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix, list[int | None]]:
    """Smith normal form over k[[t]] modulo t^truncation.

    Returns (U, Diag, V, valuations) with U @ A @ V = Diag mod t^D, unit
    determinants for U and V, diagonal entries t^(v_1), t^(v_2), .. with
    v_1 <= v_2 <= .., and None marking exactly-zero diagonal positions.
    """
    _check_univariate(matrix)
    _check_visibility(matrix, truncation)
    ws = _Worksheet(matrix, truncation)
    m, n = matrix.rows, matrix.cols
    diag_count = min(m, n)
    step = 0
    while step < diag_count:
        best: tuple[int, int, int] | None = None
        exact_zero = True
        for i in range(step, m):
            for j in range(step, n):
                entry = ws.b[i][j]
                if not entry.is_zero():
                    exact_zero = False
                val = _valuation(entry)
                if val is not None and (best is None or val < best[0]):
                    best = (val, i, j)
        if best is None:
            if exact_zero:
                break  # genuine zero block: remaining invariants are 0
            raise TruncationInsufficientError(
                "all remaining entries vanish below the truncation", truncation
            )
        val, pi, pj = best
        ws.swap_rows(step, pi)
        ws.swap_cols(step, pj)
        unit = _shift_down(ws.b[step][step], val)
        ws.scale_row(step, poly_inverse_unit(unit, truncation))
        # pivot is now exactly t^val; clear its row and column
        for i in range(step + 1, m):
            entry = ws.b[i][step]
            if entry.is_zero():
                continue
            ws.add_row(i, step, -_shift_down(entry, val))
        for j in range(step + 1, n):
            entry = ws.b[step][j]
            if entry.is_zero():
                continue
            ws.add_col(j, step, -_shift_down(entry, val))
        step += 1
    diag, u, v = ws.matrices()
    valuations = [
        _valuation(diag.entries[i][i]) for i in range(diag_count)
    ]
    return u, diag, v, valuations


def sym_canonical_dvr(
    matrix: PolyMatrix, truncation: int
) -> tuple[PolyMatrix, list[int | None]]:
    """Congruence diagonalization over k[[t]]: U @ A @ U^T diagonal mod t^D.

    Diagonal entries are unit multiples of t^(v_i) with v_1 <= v_2 <= ..
    (units stay: square roots are unavailable over Q).  Exactly-zero trailing
    diagonal positions are reported as None.
    """
    if matrix.structure.kind != Structure.SYM:
        raise StructureError("symmetric canonical form needs the sym tag")
    _check_univariate(matrix)
    if matrix.is_zero():
        raise TruncationInsufficientError(
            "the matrix vanishes below the truncation: no pivot information", truncation
        )
    _check_visibility(matrix, truncation)
    return _congruence_canonical(matrix, truncation, skew=False)


def skew_canonical_dvr(
    matrix: PolyMatrix, truncation: int
) -> tuple[PolyMatrix, list[int], int]:
    """Symplectic-block canonical form: U @ A @ U^T = (+)_i t^(v_i) E (+) 0.

    Returns (U, pair valuations, rank deficiency); the deficiency counts the
    rows of the exactly-zero block.
    """
    if matrix.structure.kind != Structure.SKEW:
        raise StructureError("skew canonical form needs the skew tag")
    _check_univariate(matrix)
    _check_visibility(matrix, truncation)
    u, vals = _congruence_canonical(matrix, truncation, skew=True)
    pairs = [v for v in vals if v is not None]
    deficiency = matrix.rows - 2 * len(pairs)
    return u, pairs, deficiency


def _congruence_canonical(
    matrix: PolyMatrix, truncation: int, skew: bool
) -> tuple[PolyMatrix, list[int | None]]:
    m = matrix.rows
    ws = _Worksheet(matrix, truncation)

    def congr_swap(a: int, b: int) -> None:
        ws.swap_rows(a, b)
        ws.swap_cols(a, b)

    def congr_add(target: int, source: int, factor: Poly) -> None:
        ws.add_row(target, source, factor)
        ws.add_col(target, source, factor)

    def congr_scale(i: int, factor: Poly) -> None:
        ws.scale_row(i, factor)
        ws.scale_col(i, factor)

    valuations: list[int | None] = []
    step = 0
    block = 2 if skew else 1
    while step + block - 1 < m:
        best: tuple[int, int, int] | None = None
        exact_zero = True
        for i in range(step, m):
            for j in range(i if not skew else i + 1, m):
                entry = ws.b[i][j]
                if not entry.is_zero():
                    exact_zero = False
                val = _valuation(entry)
                if val is not None and (best is None or val < best[0]):
                    best = (val, i, j)
        if best is None:
            if exact_zero:
                break
            raise TruncationInsufficientError(
                "all remaining entries vanish below the truncation", truncation
            )
        val, pi, pj = best
        if not skew:
            # prefer a diagonal pivot of the same valuation: dividing by the
            # pivot stays exact only when it attains the global minimum
            diag = next(
                (i for i in range(step, m) if _valuation(ws.b[i][i]) == val), None
            )
            if diag is not None:
                pi = pj = diag
        if not skew and pi != pj:
            # no diagonal attains the minimum, so both diagonal coefficients
            # at t^val vanish and adding row+column j to i puts 2 * leading
            # coefficient of the (i, j) entry on the diagonal (char 0)
            congr_add(pi, pj, Poly.constant(1, 1))
            if _valuation(ws.b[pi][pi]) != val:
                raise AssertionError("completing the square lost the pivot")
            pj = pi
        if skew:
            congr_swap(step, pi)
            congr_swap(step + 1, pj)
            pivot = ws.b[step][step + 1]
            val = _valuation(pivot)
            unit = _shift_down(pivot, val)
            congr_scale(step, poly_inverse_unit(unit, truncation))
            # pivot block is now t^val * E; clear the other columns
            for i in range(step + 2, m):
                alpha = ws.b[i][step + 1]
                beta = ws.b[i][step]
                if not alpha.is_zero():
                    congr_add(i, step, -_shift_down(alpha, val))
                if not beta.is_zero():
                    congr_add(i, step + 1, _shift_down(beta, val))
            valuations.append(val)
            step += 2
        else:
            congr_swap(step, pi)
            pivot = ws.b[step][step]
            val = _valuation(pivot)
            unit = _shift_down(pivot, val)
            inv = poly_inverse_unit(unit, truncation)
            for i in range(step + 1, m):
                entry = ws.b[i][step]
                if entry.is_zero():
                    continue
                factor = -(inv * _shift_down(entry, val)).truncate(truncation)
                congr_add(i, step, factor)
            valuations.append(val)
            step += 1
    while len(valuations) < (m // block if skew else m):
        valuations.append(None)
    _, u, _ = ws.matrices()
    return PolyMatrix(matrix.nvars, u.entries), valuations
