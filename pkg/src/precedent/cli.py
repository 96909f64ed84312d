"""Command-line surface.

Subcommands: validate (document checks), force (run a forcing query with
an optional derivation trace), consistency (brute-force search for
situations forced both ways), check (cross-model property checks over a
document plus a seeded randomized neighborhood).

Exit codes: 0 the command ran and its verdict is in the output; 1 the
document failed validation or a property check failed; 2 usage or I/O
problems (unreadable file, unknown names, model mismatch, cap too small).
Set PRECEDENT_COLOR=0 to disable ANSI colors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from random import Random
from typing import Sequence

from .casebase_io import (
    DIMENSION,
    FACTOR,
    CaseBaseDocument,
    CasebaseParseError,
    document_casebase,
    load_casebase,
    validate_document,
)
from .dimension_models import (
    BoundClaim,
    BoundDirection,
    dhrm_bound,
    dhrm_forces_outcome,
    drm_forces,
)
from .factor_models import hrm_forces, rm_forces
from .hierarchy import Literal, Side
from .oracle import (
    EnumerationCapError,
    check_consistency,
    differential_check_dimension,
    differential_check_factor,
    dim_flat_reduction_check,
    encoding_doc_check,
    flat_reduction_doc_check,
    lift_flat_casebase,
    lift_flat_dim_casebase,
    random_dhrm_differential,
    random_encoding_check,
    random_flat_reduction_check,
    random_hrm_differential,
)
from .trace import render_trace, trace_to_dict

DEFAULT_SEED = 1729
CHECK_ROUNDS = 500

_INT_TOKEN = re.compile(r"-?\d+$")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _color_enabled(stream) -> bool:
    if os.environ.get("PRECEDENT_COLOR") == "0":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _verdict(forced: bool) -> str:
    text = "FORCED" if forced else "NOT FORCED"
    if _color_enabled(sys.stdout):
        code = "32" if forced else "31"
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _load(path: str) -> CaseBaseDocument:
    try:
        return load_casebase(path)
    except OSError as e:
        raise CliError(2, f"cannot read {path}: {e.strerror or e}") from e
    except CasebaseParseError as e:
        raise CliError(2, f"{path}: {e}") from e


def _load_valid(path: str) -> CaseBaseDocument:
    doc = _load(path)
    report = validate_document(doc)
    if not report.ok:
        raise CliError(1, f"{path}:\n{report}")
    return doc


def _selected_names(doc: CaseBaseDocument, selector: str | None) -> list[str] | None:
    if selector is None:
        return None
    names = [n.strip() for n in selector.split(",") if n.strip()]
    if not names:
        raise CliError(2, "--case-base names nothing")
    unknown = [n for n in names if n not in doc.cases]
    if unknown:
        raise CliError(2, f"unknown case names: {', '.join(unknown)}")
    return names


def _parse_value_token(token: str):
    return int(token) if _INT_TOKEN.match(token) else token


def cmd_validate(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    report = validate_document(doc)
    if report.ok:
        print("OK")
        return 0
    print(report)
    return 1


def _require_model(doc: CaseBaseDocument, model: str) -> None:
    wants_flat = model in ("rm", "drm")
    wants_dim = model in ("drm", "dhrm")
    doc_dim = doc.model == DIMENSION
    if doc_dim != wants_dim or doc.flat != wants_flat:
        have = f"{'flat' if doc.flat else 'hierarchical'} {doc.model} document"
        raise CliError(2, f"model {model} does not run on a {have}")


def cmd_force(args: argparse.Namespace) -> int:
    doc = _load_valid(args.file)
    _require_model(doc, args.model)
    names = _selected_names(doc, args.case_base)
    cb = document_casebase(doc, names)
    if args.query not in doc.queries:
        raise CliError(2, f"unknown query {args.query!r}")
    situation = doc.queries[args.query]

    goal = args.goal
    try:
        if args.model == "rm":
            if goal not in (Side.PI.value, Side.DELTA.value):
                raise CliError(2, "rm goals are pi or delta")
            result = rm_forces(cb, situation, Side(goal))
        elif args.model == "hrm":
            h = cb.hierarchy
            if goal == "pi":
                literal = h.pi
            elif goal == "delta":
                literal = h.delta
            else:
                negated = goal.startswith("!")
                name = goal[1:] if negated else goal
                if name not in h.factor_set:
                    raise CliError(2, f"unknown factor {name!r} in goal")
                literal = Literal(name, negated)
            result = hrm_forces(cb, situation, literal)
        elif args.model == "drm":
            if goal not in (Side.PI.value, Side.DELTA.value):
                raise CliError(2, "drm goals are pi or delta")
            result = drm_forces(cb, situation, Side(goal))
        else:  # dhrm
            if goal in (Side.PI.value, Side.DELTA.value):
                result = dhrm_forces_outcome(cb, situation, Side(goal))
            else:
                if "<=" not in goal:
                    raise CliError(2, "dhrm goals are pi, delta, v<=d or d<=v")
                left, _, right = goal.partition("<=")
                left, right = left.strip(), right.strip()
                ids = cb.hierarchy.id_set

                def as_dimension(token: str) -> str | None:
                    if token in ids:
                        return token
                    if token in (Side.PI.value, Side.DELTA.value):
                        return cb.hierarchy.top  # outcome-dimension alias
                    return None

                left_dim, right_dim = as_dimension(left), as_dimension(right)
                if left_dim and right_dim:
                    raise CliError(2, f"ambiguous goal {goal!r}: both sides name dimensions")
                if right_dim:
                    claim = BoundClaim(right_dim, _parse_value_token(left), BoundDirection.LOWER)
                elif left_dim:
                    claim = BoundClaim(left_dim, _parse_value_token(right), BoundDirection.UPPER)
                else:
                    raise CliError(2, f"goal {goal!r} names no declared dimension")
                result = dhrm_bound(cb, situation, claim)
    except ValueError as e:
        raise CliError(2, str(e)) from e

    if args.json:
        payload = {
            "model": args.model,
            "query": args.query,
            "goal": goal,
            "forced": result.forced,
            "trace": trace_to_dict(result.trace),
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0
    print(f"{args.model}: {goal} for query {args.query}: {_verdict(result.forced)}")
    if args.trace:
        print()
        print(render_trace(result.trace, query=args.query))
    return 0


def cmd_consistency(args: argparse.Namespace) -> int:
    doc = _load_valid(args.file)
    if doc.model != FACTOR:
        raise CliError(2, "consistency enumeration runs on factor documents")
    names = _selected_names(doc, args.case_base)
    cb = document_casebase(doc, names)
    try:
        report = check_consistency(cb, cap=args.cap)
    except EnumerationCapError as e:
        raise CliError(2, str(e)) from e
    print(report)
    return 0


def _check_oracle(doc: CaseBaseDocument, rng: Random) -> list:
    queries = list(doc.queries.items())
    cb = document_casebase(doc)
    if doc.model == FACTOR:
        if doc.flat:
            cb = lift_flat_casebase(cb)
        return [
            differential_check_factor(cb, queries),
            random_hrm_differential(rng, CHECK_ROUNDS),
        ]
    if doc.flat:
        cb = lift_flat_dim_casebase(cb)
    return [
        differential_check_dimension(cb, queries),
        random_dhrm_differential(rng, CHECK_ROUNDS),
    ]


def _check_flat_reduction(doc: CaseBaseDocument, rng: Random) -> list:
    if doc.model == FACTOR:
        cb = document_casebase(doc)
        if doc.flat:
            cb = lift_flat_casebase(cb)
        basics = cb.hierarchy.basic
        extra = [
            {f: v for f, v in q.items() if f in basics} for q in doc.queries.values()
        ]
        try:
            doc_part = flat_reduction_doc_check(cb, extra_queries=extra)
        except (ValueError, EnumerationCapError) as e:
            raise CliError(2, str(e)) from e
        return [doc_part, random_flat_reduction_check(rng, CHECK_ROUNDS)]
    cb = document_casebase(doc)
    if doc.flat:
        cb = lift_flat_dim_casebase(cb)
    try:
        return [dim_flat_reduction_check(cb)]
    except (ValueError, EnumerationCapError) as e:
        raise CliError(2, str(e)) from e


def _check_encoding(doc: CaseBaseDocument, rng: Random) -> list:
    if doc.model != FACTOR or not doc.flat:
        raise CliError(2, "the encoding check runs on flat factor documents")
    cb = document_casebase(doc)
    try:
        doc_part = encoding_doc_check(cb)
    except EnumerationCapError as e:
        raise CliError(2, str(e)) from e
    return [doc_part, random_encoding_check(rng, CHECK_ROUNDS)]


def cmd_check(args: argparse.Namespace) -> int:
    doc = _load_valid(args.file)
    rng = Random(args.seed)
    if args.property == "oracle":
        results = _check_oracle(doc, rng)
    elif args.property == "flat-reduction":
        results = _check_flat_reduction(doc, rng)
    else:
        results = _check_encoding(doc, rng)
    total = sum(r.checked for r in results)
    for r in results:
        if not r.passed:
            print(f"property {args.property}: FAIL after {r.checked} checks")
            print(f"counterexample: {r.counterexample}")
            return 1
    print(f"property {args.property}: pass ({total} checks)")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="precedent",
        description="Decide whether precedent forces the outcome of a new fact situation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse and validate a case-base document")
    p_validate.add_argument("file")
    p_validate.set_defaults(func=cmd_validate)

    p_force = sub.add_parser("force", help="run a forcing query")
    p_force.add_argument("file")
    p_force.add_argument("--case-base", help="comma-separated case names (default: all)")
    p_force.add_argument("--query", required=True, help="named query situation")
    p_force.add_argument(
        "--goal",
        required=True,
        help="pi, delta, a literal like Q or !Q, or a bound like 3<=R or R<=3",
    )
    p_force.add_argument("--model", required=True, choices=("rm", "hrm", "drm", "dhrm"))
    p_force.add_argument("--trace", action="store_true", help="print the derivation")
    p_force.add_argument("--json", action="store_true", help="structured output")
    p_force.set_defaults(func=cmd_force)

    p_cons = sub.add_parser("consistency", help="search for situations forced both ways")
    p_cons.add_argument("file")
    p_cons.add_argument("--case-base", help="comma-separated case names (default: all)")
    p_cons.add_argument("--cap", type=int, default=16, help="max factors to enumerate over")
    p_cons.set_defaults(func=cmd_consistency)

    p_check = sub.add_parser("check", help="run a cross-model property check")
    p_check.add_argument("file")
    p_check.add_argument(
        "--property",
        required=True,
        choices=("flat-reduction", "oracle", "encoding"),
    )
    p_check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
