"""Command-line front end.

One subcommand per computation; JSON in, JSON out (``--pretty`` for text).
Exit codes: 0 success, 2 input or validation error, 3 budget exhausted
under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .closure import integral_closure, newton_polyhedron
from .determinacy import DEFAULT_BUDGET, relative_report, report
from .dvr import TruncationInsufficientError, skew_canonical_dvr, smith_normal_form, sym_canonical_dvr
from .ideals import Ideal, loewy_length
from .jets import JetContext
from .matrixops import (
    PolyMatrix,
    Structure,
    StructureError,
    determinantal_ideal,
    matrix_from_json_dict,
    pfaffian,
    pfaffian_sub_ideal,
)
from .poly import PolyParseError, poly_parse
from .tangent import (
    GroupAction,
    GroupKind,
    SigmaKind,
    SigmaSpace,
    ann_coker_contains_power,
    chain_bounds,
    minimal_certified_power,
    t1_ann_jet,
    t1_jet_dimension,
)

GROUP_FLAGS = {
    "gr": GroupKind.GR,
    "gl": GroupKind.GL,
    "glr": GroupKind.GLR,
    "congr": GroupKind.GCONGR,
    "conj": GroupKind.GCONJ,
    "gr-up": GroupKind.GR_UP,
    "glr-up": GroupKind.GLR_UP,
}

SIGMA_FLAGS = {
    "full": SigmaKind.FULL,
    "sym": SigmaKind.SYM,
    "skew": SigmaKind.SKEW,
    "upper": SigmaKind.UPPER,
}


class InputError(ValueError):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_matrix(path: str) -> tuple[PolyMatrix, tuple[str, ...]]:
    payload = _load_json(path)
    if "matrix" not in payload or "vars" not in payload:
        raise InputError(f"{path} needs 'vars' and 'matrix' fields")
    return matrix_from_json_dict(payload)


def _load_ideal(path: str) -> tuple[Ideal, tuple[str, ...]]:
    payload = _load_json(path)
    if "vars" not in payload or "generators" not in payload:
        raise InputError(f"{path} needs 'vars' and 'generators' fields")
    names = tuple(payload["vars"])
    gens = [poly_parse(text, names) for text in payload["generators"]]
    return Ideal(len(names), gens), names


def _emit(payload: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(json.dumps(payload, sort_keys=True))


def _default_budget() -> int:
    env = os.environ.get("DETERMINA_NMAX")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"DETERMINA_NMAX must be an integer, got {env!r}") from exc
    return DEFAULT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="determina",
        description="Finite determinacy of matrices over formal local rings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, group: bool = False) -> None:
        p.add_argument("input", help="input JSON file")
        p.add_argument("--nmax", type=int, default=None, help="search budget for Loewy lengths")
        p.add_argument("--truncation", type=int, default=None, help="jet truncation override")
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")
        p.add_argument("--strict", action="store_true", help="exit 3 when a search is inconclusive")
        if group:
            p.add_argument("--group", choices=sorted(GROUP_FLAGS), default="glr")
            p.add_argument("--sigma", choices=sorted(SIGMA_FLAGS), default="full")
            p.add_argument("--unipotent", action="store_true", help="use the unipotent subgroup")

    add_common(sub.add_parser("ideals", help="determinantal ideals of a matrix"))
    add_common(sub.add_parser("closure", help="integral closure of a monomial ideal"))
    add_common(sub.add_parser("anncoker", help="certified cokernel annihilator bounds"))
    add_common(sub.add_parser("pfaffian", help="Pfaffian or sub-Pfaffian ideal"))
    add_common(sub.add_parser("t1", help="truncated tangent quotient annihilator"), group=True)
    add_common(sub.add_parser("determinacy", help="determinacy report"), group=True)
    rel = sub.add_parser("relative", help="relative determinacy report")
    add_common(rel, group=True)
    rel.add_argument("--relative-j", required=True, help="JSON file with the shift ideal")
    add_common(sub.add_parser("smith", help="Smith normal form over k[[t]]"))
    add_common(sub.add_parser("chain", help="bounds for a chain of module maps"))
    add_common(sub.add_parser("loewy", help="Loewy length of an ideal"))
    return parser


def _cmd_ideals(args) -> dict:
    matrix, names = _load_matrix(args.input)
    out = {}
    for size in range(1, matrix.rows + 1):
        ideal = determinantal_ideal(matrix, size)
        out[str(size)] = ideal.to_strings(names)
    return {"vars": list(names), "determinantal_ideals": out}


def _cmd_closure(args) -> dict:
    ideal, names = _load_ideal(args.input)
    if not ideal.is_monomial:
        raise InputError("integral closure needs a monomial ideal")
    closed = integral_closure(ideal)
    return {
        "vars": list(names),
        "generators": ideal.to_strings(names),
        "closure": closed.to_strings(names),
        "newton_polyhedron": newton_polyhedron(ideal).to_json_dict(),
    }


def _cmd_anncoker(args, budget: int) -> dict:
    matrix, names = _load_matrix(args.input)
    plain, _ = minimal_certified_power(
        lambda k: ann_coker_contains_power(matrix, k, restricted=False), budget
    )
    restricted, _ = minimal_certified_power(
        lambda k: ann_coker_contains_power(matrix, k, restricted=True), budget
    )
    return {
        "vars": list(names),
        "loewy_length": plain,
        "restricted_loewy_length": restricted,
        "budget": budget,
    }


def _cmd_pfaffian(args) -> dict:
    matrix, names = _load_matrix(args.input)
    if matrix.rows % 2 == 0:
        value = pfaffian(matrix)
        return {"vars": list(names), "pfaffian": value.to_string(names)}
    ideal = pfaffian_sub_ideal(matrix)
    return {"vars": list(names), "sub_pfaffian_ideal": ideal.to_strings(names)}


def _cmd_t1(args) -> dict:
    matrix, names = _load_matrix(args.input)
    action = GroupAction(GROUP_FLAGS[args.group], unipotent=args.unipotent)
    sigma = SigmaSpace(SIGMA_FLAGS[args.sigma])
    truncation = args.truncation or (matrix.max_entry_degree() + 3)
    context = JetContext(matrix.nvars, truncation, names)
    ann = t1_ann_jet(matrix, action, sigma, context)
    dim = t1_jet_dimension(matrix, action, sigma, context)
    return {
        "vars": list(names),
        "truncation": truncation,
        "annihilator_jet_basis": [p.to_string(names) for p in ann],
        "t1_jet_dimension": dim,
    }


def _cmd_determinacy(args, budget: int) -> dict:
    matrix, names = _load_matrix(args.input)
    action = GroupAction(GROUP_FLAGS[args.group], unipotent=args.unipotent)
    sigma = SigmaSpace(SIGMA_FLAGS[args.sigma])
    result = report(matrix, action, sigma, budget, names)
    return result.payload


def _cmd_relative(args, budget: int) -> dict:
    matrix, names = _load_matrix(args.input)
    action = GroupAction(GROUP_FLAGS[args.group], unipotent=args.unipotent)
    sigma = SigmaSpace(SIGMA_FLAGS[args.sigma])
    shift, _ = _load_ideal(args.relative_j)
    result = relative_report(matrix, action, sigma, shift, None, budget, names)
    return result.payload


def _cmd_smith(args) -> dict:
    matrix, names = _load_matrix(args.input)
    truncation = args.truncation or 12
    if matrix.structure.kind == Structure.SYM:
        u, vals = sym_canonical_dvr(matrix, truncation)
        return {
            "vars": list(names),
            "truncation": truncation,
            "diagonal_valuations": [v if v is not None else None for v in vals],
            "transform": u.to_json_dict(names),
        }
    if matrix.structure.kind == Structure.SKEW:
        u, pairs, deficiency = skew_canonical_dvr(matrix, truncation)
        return {
            "vars": list(names),
            "truncation": truncation,
            "pair_valuations": pairs,
            "rank_deficiency": deficiency,
            "transform": u.to_json_dict(names),
        }
    u, diag, v, vals = smith_normal_form(matrix, truncation)
    return {
        "vars": list(names),
        "truncation": truncation,
        "valuations": [v2 if v2 is not None else None for v2 in vals],
        "left_transform": u.to_json_dict(names),
        "right_transform": v.to_json_dict(names),
    }


def _cmd_chain(args, budget: int) -> dict:
    payload = _load_json(args.input)
    names = tuple(payload.get("vars", ()))
    if not names or "maps" not in payload:
        raise InputError("chain input needs 'vars' and 'maps'")
    maps = []
    for entry in payload["maps"]:
        entry = dict(entry)
        entry.setdefault("vars", list(names))
        matrix, _ = matrix_from_json_dict(entry)
        maps.append(matrix)
    bounds = chain_bounds(maps)
    lower, _ = minimal_certified_power(bounds.lower_test, budget)
    return {
        "vars": list(names),
        "lower_certified_power": lower,
        "upper_ideal": bounds.upper.to_strings(names) if bounds.upper is not None else None,
        "upper_note": bounds.upper_note,
        "budget": budget,
    }


def _cmd_loewy(args, budget: int) -> dict:
    ideal, names = _load_ideal(args.input)
    result = loewy_length(ideal, budget)
    return {
        "vars": list(names),
        "generators": ideal.to_strings(names),
        "loewy_length": result.value,
        "budget": budget,
    }


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = args.nmax if args.nmax is not None else _default_budget()
    try:
        if args.command == "ideals":
            payload = _cmd_ideals(args)
        elif args.command == "closure":
            payload = _cmd_closure(args)
        elif args.command == "anncoker":
            payload = _cmd_anncoker(args, budget)
        elif args.command == "pfaffian":
            payload = _cmd_pfaffian(args)
        elif args.command == "t1":
            payload = _cmd_t1(args)
        elif args.command == "determinacy":
            payload = _cmd_determinacy(args, budget)
        elif args.command == "relative":
            payload = _cmd_relative(args, budget)
        elif args.command == "smith":
            payload = _cmd_smith(args)
        elif args.command == "chain":
            payload = _cmd_chain(args, budget)
        elif args.command == "loewy":
            payload = _cmd_loewy(args, budget)
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command!r}")
            return 2
    except (InputError, PolyParseError, StructureError, TruncationInsufficientError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.pretty)
    if args.strict and _is_inconclusive(payload):
        return 3
    return 0


def _is_inconclusive(payload: dict) -> bool:
    verdict = payload.get("verdict")
    if verdict and verdict.get("kind") == "inconclusive":
        return True
    for key in ("loewy_length", "restricted_loewy_length", "lower_certified_power"):
        if key in payload and payload[key] is None:
            return True
    return False


if __name__ == "__main__":
    sys.exit(main())
