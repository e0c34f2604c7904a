"""The report engine: verdicts and certified bounds on the determinacy order.

The order of determinacy of a matrix A (inside a deformation space Sigma, up
to a group action G) is sandwiched by Loewy lengths of annihilator ideals:

    ll(ann) - 1  <=  ord  <=  ll(ann of the unipotent action) - 1.

The dispatch below picks, per action, which certified test computes each
side, and which (m, n, p, structure) ranges admit no finitely determined
matrix at all.  Every numeric bound carries the operation and truncation
that produced it; reports are plain JSON-ready dictionaries and
byte-identical across runs for identical inputs.

One extra lower bound applies everywhere: a nonzero matrix with all entries
of order >= q has the same (q-1)-jet as the zero matrix, whose orbit is {0},
so its determinacy order is at least q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .closure import closure_colon
from .ideals import CertifiedBool, Ideal, colon_contains_power, contains_power
from .matrixops import PolyMatrix, Structure, StructureError, determinantal_ideal, pfaffian_sub_ideal
from .poly import Poly
from .tangent import (
    GroupAction,
    GroupKind,
    JetContext,
    SigmaKind,
    SigmaSpace,
    ann_coker_contains_power,
    check_compatibility,
    matrix_span,
    minimal_certified_power,
    relative_gr_contains_power,
    t1_relative_contains_power,
    tangent_generators,
    _matrix_vector,
)

DEFAULT_BUDGET = 16


@dataclass(frozen=True)
class DeterminacyReport:
    """Verdict plus certificates; renders to stable JSON."""

    payload: dict

    @property
    def verdict(self) -> str:
        return self.payload["verdict"]["kind"]

    @property
    def lower(self) -> int | None:
        return self.payload["verdict"].get("lower")

    @property
    def upper(self) -> int | None:
        return self.payload["verdict"].get("upper")

    def to_json(self, pretty: bool = False) -> str:
        if pretty:
            return json.dumps(self.payload, sort_keys=True, indent=2)
        return json.dumps(self.payload, sort_keys=True)


def _ideal_strings(ideal: Ideal, names) -> list[str]:
    return ideal.to_strings(tuple(names))


def _univariate_order_ideal(ideal: Ideal) -> Ideal:
    """Over k[[t]] every nonzero ideal is (t^v) with v the minimal order."""
    if ideal.is_zero():
        return ideal
    v = min(int(g.order()) for g in ideal.generators)
    return Ideal.from_monomials(1, [(v,)])


def _closure_colon_or_univariate(top: Ideal, below: Ideal) -> tuple[Ideal | None, str]:
    """closure(top) : closure(below) on the monomial path, with the exact
    univariate fallback; (None, reason) when neither applies."""
    if top.is_zero():
        return None, "top determinantal ideal is zero"
    if below.is_zero():
        return Ideal.unit(top.nvars), "colon by the zero ideal"
    if top.nvars == 1:
        a = _univariate_order_ideal(top)
        b = _univariate_order_ideal(below)
        va = sum(a.monomial_exponents()[0])
        vb = sum(b.monomial_exponents()[0])
        return Ideal.from_monomials(1, [(max(va - vb, 0),)]), "univariate valuations"
    if top.is_monomial and below.is_monomial:
        return closure_colon(top, below), "monomial Newton polyhedron route"
    return None, "integral closure needs monomial ideals (or one variable)"


def genericity_note(shape: tuple[int, int], action: GroupAction, nvars: int, structure_kind: str = Structure.GENERAL) -> str:
    """Which side of the dichotomy the parameters (m, n, p, G) sit on."""
    m, n = shape
    p = nvars
    kind = action.kind
    if p <= 0:
        return "zero-dimensional base rings are outside the modeled range"
    if kind in (GroupKind.GR, GroupKind.GLR):
        if p > n - m + 1:
            return (
                f"dim(R) = {p} exceeds n - m + 1 = {n - m + 1}: no matrix with entries "
                f"in the maximal ideal is finitely determined for {kind}"
            )
        return f"dim(R) = {p} <= n - m + 1 = {n - m + 1}: generic finite determinacy holds for {kind}"
    if kind == GroupKind.GL:
        if m < n:
            return "left multiplication on wide matrices annihilates nothing: no finitely determined matrices"
        return "square case: left and right multiplication give the same determinacy"
    if kind == GroupKind.GCONGR:
        if structure_kind == Structure.SYM or (structure_kind == Structure.SKEW and m % 2 == 0):
            if p > 1:
                return "dim(R) > 1: no congruence-finitely-determined forms with entries in the maximal ideal"
            return "dim(R) = 1: generic finite determinacy holds for congruence"
        if structure_kind == Structure.SKEW:
            if p > 3:
                return "odd skew forms: dim(R) > 3 admits no finitely determined ones"
            return "odd skew forms: dim(R) <= 3, generic finite determinacy holds"
        return "congruence with unrestricted deformations is never finitely determined when dim(R) > 0"
    if kind == GroupKind.GCONJ:
        return "conjugation admits no finitely determined matrices when dim(R) > 0"
    if kind in (GroupKind.GR_UP, GroupKind.GLR_UP):
        return "blockwise dichotomy: each diagonal block must satisfy dim(R) <= n_i - m_i + 1"
    return ""


class _ReportBuilder:
    def __init__(self, matrix: PolyMatrix, action: GroupAction, sigma: SigmaSpace, n_max: int, names):
        self.matrix = matrix
        self.action = action
        self.sigma = sigma
        self.n_max = n_max
        self.names = tuple(names)
        self.certificates: list[dict] = []
        self.notes: list[str] = []

    def echo(self) -> dict:
        return {
            "matrix": self.matrix.to_json_dict(self.names),
            "group": self.action.kind,
            "unipotent": self.action.unipotent,
            "sigma": self.sigma.kind,
            "variables": list(self.names),
            "budget": self.n_max,
        }

    def note(self, text: str) -> None:
        if text and text not in self.notes:
            self.notes.append(text)

    def certificate(self, **kwargs) -> None:
        self.certificates.append({k: v for k, v in kwargs.items() if v is not None})

    def negative(self, reason: str, rule: str) -> DeterminacyReport:
        payload = {
            "input": self.echo(),
            "verdict": {"kind": "not_finitely_determined", "reason": reason, "rule": rule},
            "certificates": self.certificates,
            "notes": self.notes,
        }
        return DeterminacyReport(payload)

    def inconclusive(self) -> DeterminacyReport:
        payload = {
            "input": self.echo(),
            "verdict": {"kind": "inconclusive", "budget": self.n_max},
            "certificates": self.certificates,
            "notes": self.notes,
        }
        return DeterminacyReport(payload)

    def bounds(self, lower: int | None, upper: int | None) -> DeterminacyReport:
        if lower is None and upper is None:
            return self.inconclusive()
        verdict: dict = {"kind": "bounds"}
        if lower is not None:
            verdict["lower"] = lower
        if upper is not None:
            verdict["upper"] = upper
        payload = {
            "input": self.echo(),
            "verdict": verdict,
            "certificates": self.certificates,
            "notes": self.notes,
        }
        return DeterminacyReport(payload)

    # -- shared bound searches ------------------------------------------------

    def order_obstruction(self) -> int:
        """ord >= min entry order for a nonzero matrix: its low jets are the
        zero matrix's, and the zero matrix's orbit is just itself."""
        if self.matrix.is_zero():
            return 0
        q = int(self.matrix.min_entry_order())
        if q > 0:
            self.certificate(
                bound="lower",
                route="zero-jet obstruction",
                value=q,
                detail=f"all entries have order >= {q} and the zero matrix is a fixed point",
            )
        return q

    def search(self, label: str, test: Callable[[int], CertifiedBool]) -> tuple[int | None, CertifiedBool | None]:
        value, evidence = minimal_certified_power(test, self.n_max)
        return value, evidence

    def certified_loewy(self, label: str, bound: str, test: Callable[[int], CertifiedBool], offset: int) -> int | None:
        """Minimal certified power, reported as a bound after the offset."""
        value, evidence = self.search(label, test)
        if value is None:
            self.certificate(
                bound=bound,
                route=label,
                outcome=f"no certificate up to budget {self.n_max}",
                truncation=evidence.truncation_used if evidence else None,
            )
            self.note(f"{label}: search exhausted the budget {self.n_max}; {bound} bound degraded to unknown")
            return None
        self.certificate(
            bound=bound,
            route=label,
            loewy_length=value,
            value=max(value + offset, 0),
            truncation=evidence.truncation_used if evidence else None,
            detail=evidence.certificate if evidence else None,
        )
        return max(value + offset, 0)

    def loewy_of_ideal(self, label: str, bound: str, ideal: Ideal, offset: int) -> int | None:
        return self.certified_loewy(label, bound, lambda k: contains_power(ideal, k), offset)


def report(
    matrix: PolyMatrix,
    action: GroupAction,
    sigma: SigmaSpace,
    n_max: int = DEFAULT_BUDGET,
    names: Sequence[str] | None = None,
) -> DeterminacyReport:
    """Verdict and certified bounds for the determinacy order of the matrix."""
    if names is None:
        from .poly import default_names

        names = default_names(matrix.nvars)
    check_compatibility(matrix, action, sigma)
    b = _ReportBuilder(matrix, action, sigma, n_max, names)
    m, n, p = matrix.rows, matrix.cols, matrix.nvars
    rank0 = matrix.constant_rank()
    b.note(genericity_note((m, n), action, p, matrix.structure.kind))
    b.note(
        "answers are exact over the formal power series ring; "
        "a finite order certifies equivalence to a polynomial representative "
        "of that degree (stable algebraizability)"
    )

    if matrix.is_zero() and _has_directions(matrix, sigma):
        return b.negative(
            "the zero matrix admits every deformation but its orbit is {0}",
            rule="zero-matrix",
        )

    kind = action.kind
    if kind == GroupKind.GCONJ:
        _attach_trace_certificate(b, matrix)
        return b.negative(
            "conjugation preserves the trace hyperplane at the generic point, so the "
            "tangent quotient is supported everywhere and nothing is finitely determined",
            rule="conjugation-trace-obstruction",
        )

    if kind == GroupKind.GCONGR and sigma.kind == SigmaKind.FULL:
        return b.negative(
            "congruence orbits of square matrices never absorb unrestricted "
            "deformations over a positive-dimensional ring",
            rule="congruence-full-space",
        )

    if kind in (GroupKind.GR, GroupKind.GLR) and p > n - m + 1 and rank0 < m:
        return b.negative(
            f"the cokernel annihilator has height at most n - m + 1 = {n - m + 1} < dim(R) = {p} "
            "once the constant part is rank-deficient, so it contains no power of the maximal ideal",
            rule="dimension-vs-corank",
        )

    if kind == GroupKind.GL:
        if m < n:
            return b.negative(
                "left multiplication cannot move column directions on a wide matrix: "
                "the tangent quotient has zero annihilator",
                rule="left-action-wide",
            )
        b.note("square left action matches the right action through transposition")
        kind = GroupKind.GR

    if kind == GroupKind.GCONGR:
        struct = matrix.structure.kind
        if sigma.kind == SigmaKind.SYM or (sigma.kind == SigmaKind.SKEW and m % 2 == 0):
            if p > 1 and rank0 < m:
                return b.negative(
                    "degenerate (skew-)symmetric forms over rings of dimension > 1 are never "
                    "finitely determined under congruence",
                    rule="congruence-dimension",
                )
        if sigma.kind == SigmaKind.SKEW and m % 2 == 1:
            if p > 3:
                return b.negative(
                    "odd-size skew forms have sub-Pfaffian obstructions of height at most 3 < dim(R)",
                    rule="congruence-odd-skew-dimension",
                )

    if kind in (GroupKind.GR_UP, GroupKind.GLR_UP) and rank0 == 0:
        row_blocks = matrix.structure.row_blocks or (m,)
        col_blocks = matrix.structure.col_blocks or (n,)
        for index, (bm, bn) in enumerate(zip(row_blocks, col_blocks)):
            if p > bn - bm + 1:
                return b.negative(
                    f"diagonal block {index} has shape {bm}x{bn} with n_i - m_i + 1 = {bn - bm + 1} < dim(R) = {p}",
                    rule="blockwise-dimension-vs-corank",
                )

    # -- certified bounds ---------------------------------------------------

    obstruction = b.order_obstruction() if not matrix.is_zero() else 0

    def merge_lower(formula_lower: int | None) -> int | None:
        if formula_lower is None:
            return obstruction if obstruction > 0 else None
        return max(formula_lower, obstruction)

    if kind == GroupKind.GR:
        lower = b.certified_loewy(
            "cokernel annihilator power search", "lower",
            lambda k: ann_coker_contains_power(matrix, k, restricted=False), -1,
        )
        upper = b.certified_loewy(
            "restricted cokernel annihilator power search", "upper",
            lambda k: ann_coker_contains_power(matrix, k, restricted=True), -1,
        )
        return b.bounds(merge_lower(lower), upper)

    if kind == GroupKind.GLR:
        top = determinantal_ideal(matrix, m)
        below = determinantal_ideal(matrix, m - 1)
        colon_ideal, route = _closure_colon_or_univariate(top, below)
        if colon_ideal is None:
            b.note(f"closure colon lower bound unavailable: {route}")
            lower = None
        else:
            b.certificate(
                bound="lower",
                route=f"closure colon ({route})",
                ideal=_ideal_strings(colon_ideal, b.names),
            )
            lower = b.loewy_of_ideal(f"Loewy search for closure colon ({route})", "lower", colon_ideal, -1)
        upper = b.certified_loewy(
            "restricted cokernel annihilator power search", "upper",
            lambda k: ann_coker_contains_power(matrix, k, restricted=True), -1,
        )
        return b.bounds(merge_lower(lower), upper)

    if kind == GroupKind.GCONGR:
        if sigma.kind == SigmaKind.SYM or (sigma.kind == SigmaKind.SKEW and m % 2 == 0):
            top = determinantal_ideal(matrix, m)
            below = determinantal_ideal(matrix, m - 1)
            colon_ideal, route = _closure_colon_or_univariate(top, below)
            if colon_ideal is None:
                b.note(f"closure colon lower bound unavailable: {route}")
                lower = None
            else:
                b.certificate(
                    bound="lower", route=f"closure colon ({route})",
                    ideal=_ideal_strings(colon_ideal, b.names),
                )
                lower = b.loewy_of_ideal(f"Loewy search for closure colon ({route})", "lower", colon_ideal, -1)
            upper = b.certified_loewy(
                "colon power search against the next determinantal ideal", "upper",
                lambda k: colon_contains_power(top, below, k), 0,
            )
            b.note(
                "the congruence upper bound is a Loewy length without the usual -1: "
                "the unipotent tangent space only contains the maximal ideal times "
                "the colon directions"
            )
            return b.bounds(merge_lower(lower), upper)
        # odd skew
        sub = pfaffian_sub_ideal(matrix) if m >= 3 else Ideal.unit(matrix.nvars)
        top = determinantal_ideal(matrix, m - 1)
        below = determinantal_ideal(matrix, m - 2)
        colon_ideal, route = _closure_colon_or_univariate(top, below)
        if colon_ideal is None:
            b.note(f"closure colon lower bound unavailable: {route}")
            lower = None
        else:
            b.certificate(
                bound="lower", route=f"closure colon ({route})",
                ideal=_ideal_strings(colon_ideal, b.names),
            )
            lower = b.loewy_of_ideal(f"Loewy search for closure colon ({route})", "lower", colon_ideal, -1)
        b.certificate(bound="upper", route="sub-Pfaffian ideal", ideal=_ideal_strings(sub, b.names))
        upper = b.loewy_of_ideal("Loewy search for the sub-Pfaffian ideal", "upper", sub, 0)
        b.note(
            "the odd skew upper bound is a Loewy length without the usual -1, "
            "matching the congruence convention"
        )
        return b.bounds(merge_lower(lower), upper)

    if kind in (GroupKind.GR_UP, GroupKind.GLR_UP) and _has_tall_leading_block(matrix):
        return b.negative(
            "a leading principal block submatrix is taller than wide, so its cokernel "
            "contains a free summand and the blockwise annihilator vanishes",
            rule="tall-leading-block",
        )

    if kind == GroupKind.GR_UP:
        # the annihilator decomposes along column blocks into the cokernel
        # annihilators of the leading principal block submatrices; testing
        # them jointly is exact (the full-matrix annihilator alone can be
        # strictly larger when a lower diagonal block has a kernel)
        leading = _leading_blocks(matrix)
        lower = b.certified_loewy(
            "leading-block cokernel annihilator conjunction", "lower",
            lambda k: _conjunction(leading, k, restricted=False), -1,
        )
        upper = b.certified_loewy(
            "restricted leading-block cokernel annihilator conjunction", "upper",
            lambda k: _conjunction(leading, k, restricted=True), -1,
        )
        return b.bounds(merge_lower(lower), upper)

    if kind == GroupKind.GLR_UP:
        blocks = _diagonal_blocks(matrix)
        lower = _blockwise_closure_lower(b, blocks)
        leading = _leading_blocks(matrix)
        upper = b.certified_loewy(
            "restricted leading-block cokernel annihilator conjunction", "upper",
            lambda k: _conjunction(leading, k, restricted=True), -1,
        )
        block_upper = _blockwise_product_upper(b, blocks)
        if block_upper is not None and (upper is None or block_upper < upper):
            upper = block_upper
        return b.bounds(merge_lower(lower), upper)

    raise StructureError(f"no dispatch for group kind {kind!r}")


def _has_directions(matrix: PolyMatrix, sigma: SigmaSpace) -> bool:
    from .tangent import sigma_basis

    return bool(sigma_basis((matrix.rows, matrix.cols), sigma, matrix.nvars, matrix.structure))


def _attach_trace_certificate(b: _ReportBuilder, matrix: PolyMatrix) -> None:
    """Sanity check: a nonzero-trace constant matrix is never tangent to a
    conjugation orbit, visibly so already at truncation 3."""
    context = JetContext(matrix.nvars, 3)
    gens = tangent_generators(matrix, GroupAction(GroupKind.GCONJ))
    basis = matrix_span(gens, context, (matrix.rows, matrix.cols))
    probe = PolyMatrix.identity(matrix.nvars, matrix.rows)
    inside = basis.contains_module_element(_matrix_vector(probe))
    b.certificate(
        route="conjugation trace sanity check",
        truncation=3,
        detail="identity matrix (trace m != 0) in the tangent span: " + str(inside),
    )
    if inside:
        raise AssertionError("conjugation tangent span captured a nonzero-trace matrix")


def _has_tall_leading_block(matrix: PolyMatrix) -> bool:
    rb = matrix.structure.row_blocks or (matrix.rows,)
    cb = matrix.structure.col_blocks or (matrix.cols,)
    return any(sum(rb[:q]) > sum(cb[:q]) for q in range(1, len(rb) + 1))


def _leading_blocks(matrix: PolyMatrix) -> list[PolyMatrix]:
    """Leading principal block submatrices (block rows and columns 1..q)."""
    rb = matrix.structure.row_blocks or (matrix.rows,)
    cb = matrix.structure.col_blocks or (matrix.cols,)
    blocks = []
    for q in range(1, len(rb) + 1):
        mq = sum(rb[:q])
        nq = sum(cb[:q])
        blocks.append(
            PolyMatrix(
                matrix.nvars,
                [[matrix.entries[i][j] for j in range(nq)] for i in range(mq)],
            )
        )
    return blocks


def _conjunction(blocks: Sequence[PolyMatrix], power: int, restricted: bool) -> CertifiedBool:
    worst: CertifiedBool | None = None
    for block in blocks:
        result = ann_coker_contains_power(block, power, restricted=restricted)
        if not result:
            return result
        if worst is None or result.truncation_used > worst.truncation_used:
            worst = result
    return worst or CertifiedBool(True, power + 1, "no blocks")


def _diagonal_blocks(matrix: PolyMatrix) -> list[PolyMatrix | None]:
    """Diagonal blocks; None marks a block taller than wide."""
    rb = matrix.structure.row_blocks or (matrix.rows,)
    cb = matrix.structure.col_blocks or (matrix.cols,)
    from .matrixops import _block_starts

    starts_r = _block_starts(rb)
    starts_c = _block_starts(cb)
    blocks: list[PolyMatrix | None] = []
    for bi in range(len(rb)):
        if rb[bi] > cb[bi]:
            blocks.append(None)
            continue
        entries = [
            [matrix.entries[i][j] for j in range(starts_c[bi], starts_c[bi] + cb[bi])]
            for i in range(starts_r[bi], starts_r[bi] + rb[bi])
        ]
        blocks.append(PolyMatrix(matrix.nvars, entries))
    return blocks


def _blockwise_closure_lower(b: _ReportBuilder, blocks: list[PolyMatrix]) -> int | None:
    """Lower bound from the intersection of blockwise closure colon ideals.

    The annihilator of the two-sided upper-triangular quotient sits inside
    every blockwise closure colon, so the intersection bounds its Loewy
    length from below and the order from below after the usual -1.
    """
    from .tangent import _intersect_ideals

    intersection: Ideal | None = None
    for index, block in enumerate(blocks):
        if block is None:
            b.note(f"blockwise closure colon unavailable: diagonal block {index} is taller than wide")
            return None
        top = determinantal_ideal(block, block.rows)
        below = determinantal_ideal(block, block.rows - 1)
        piece, route = _closure_colon_or_univariate(top, below)
        if piece is None:
            b.note(f"blockwise closure colon unavailable at block {index}: {route}")
            return None
        if not piece.is_monomial:
            b.note(f"blockwise closure colon produced a non-monomial ideal at block {index}")
            return None
        intersection = piece if intersection is None else _intersect_ideals(intersection, piece)
    if intersection is None:
        return None
    b.certificate(
        bound="lower",
        route="intersection of blockwise closure colon ideals",
        ideal=_ideal_strings(intersection, b.names),
    )
    return b.loewy_of_ideal("Loewy search for the blockwise intersection", "lower", intersection, -1)


def _blockwise_product_upper(b: _ReportBuilder, blocks: list[PolyMatrix]) -> int | None:
    """Upper bound from the product of blockwise cokernel annihilators: the
    product sits inside the annihilator, and Loewy lengths are subadditive
    on products, so the sum of blockwise lengths bounds the order."""
    total = 0
    for index, block in enumerate(blocks):
        if block is None:
            b.note(f"blockwise annihilator unavailable: diagonal block {index} is taller than wide")
            return None
        value, evidence = minimal_certified_power(
            lambda k, blk=block: ann_coker_contains_power(blk, k, restricted=False), b.n_max
        )
        if value is None:
            b.note(f"blockwise annihilator search exhausted the budget at block {index}")
            return None
        total += value
    b.certificate(
        bound="upper",
        route="sum of blockwise cokernel annihilator Loewy lengths",
        value=total,
    )
    return total


# -- relative determinacy ---------------------------------------------------------


def relative_report(
    matrix: PolyMatrix,
    action: GroupAction,
    sigma: SigmaSpace,
    shift_ideal: Ideal,
    group_ideal: Ideal | None = None,
    n_max: int = DEFAULT_BUDGET,
    names: Sequence[str] | None = None,
) -> DeterminacyReport:
    """Certified bounds when deformations are shifted by J and the group is
    cut to transformations that are identities modulo I."""
    if names is None:
        from .poly import default_names

        names = default_names(matrix.nvars)
    if group_ideal is None:
        group_ideal = Ideal.unit(matrix.nvars)
    check_compatibility(matrix, action, sigma)
    b = _ReportBuilder(matrix, action, sigma, n_max, names)
    b.payload_extra = None
    b.note(
        "relative bounds: deformation directions are multiplied by the shift ideal, "
        "orbit directions by the group ideal"
    )
    b.certificate(route="shift ideal", ideal=_ideal_strings(shift_ideal, b.names))
    b.certificate(route="group ideal", ideal=_ideal_strings(group_ideal, b.names))

    if action.kind == GroupKind.GR and group_ideal.is_unit():
        lower = b.certified_loewy(
            "relative column span power search", "lower",
            lambda k: relative_gr_contains_power(matrix, shift_ideal, k, restricted=False), -1,
        )
        upper = b.certified_loewy(
            "restricted relative column span power search", "upper",
            lambda k: relative_gr_contains_power(matrix, shift_ideal, k, restricted=True), -1,
        )
        return b.bounds(lower, upper)

    lower = b.certified_loewy(
        "relative tangent power search", "lower",
        lambda k: t1_relative_contains_power(matrix, action, sigma, shift_ideal, group_ideal, k), -1,
    )
    maximal = Ideal.from_monomials(
        matrix.nvars, [tuple(1 if i == j else 0 for i in range(matrix.nvars)) for j in range(matrix.nvars)]
    )
    from .ideals import ideal_product

    unipotent_ideal = ideal_product(group_ideal, maximal)
    upper = b.certified_loewy(
        "restricted relative tangent power search", "upper",
        lambda k: t1_relative_contains_power(matrix, action, sigma, shift_ideal, unipotent_ideal, k), -1,
    )
    return b.bounds(lower, upper)
