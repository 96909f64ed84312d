"""Case-base documents: parsing, validation, canonical serialization.

A document is JSON with a top-level "model" discriminator ("factor" or
"dimension").  Hierarchical documents carry edges; flat ones carry a
pro/con partition (factor model) and per-case outcomes.  Truth values are
JSON booleans, dimension values are integers or strings, and a factor or
dimension left out of an assignment is undefined, which is how partial
fact situations are written.

Parsing faults on structural problems (bad JSON, wrong shapes) with a
line/field locus.  Semantic problems (invalid hierarchy, incomplete case,
value outside a dimension's value set, undeclared names) are collected
into a ValidationReport by validate_document, all at once.  Serialization
is canonical: sorted object keys, two-space indentation, LF endings, a
trailing newline, arrays in declaration order.  parse(serialize(doc))
gives back an equal document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .dimension_models import DimCase, DimCaseBase, FlatDimCase, FlatDimCaseBase
from .factor_models import Case, FactorCaseBase, FlatCase, FlatFactorCaseBase
from .hierarchy import (
    Dimension,
    DimensionHierarchy,
    Edge,
    FactorHierarchy,
    Polarity,
    Side,
    ValidationReport,
    Value,
    ValueOrder,
    Violation,
    validate_dimension_hierarchy,
    validate_factor_hierarchy,
)

FACTOR = "factor"
DIMENSION = "dimension"


class CasebaseParseError(ValueError):
    """Structural problem in a document, with a line or field locus."""


@dataclass(frozen=True)
class CaseBaseDocument:
    model: str
    flat: bool = False
    factors: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    pro: tuple[str, ...] = ()
    con: tuple[str, ...] = ()
    dimensions: tuple[Dimension, ...] = ()
    dim_edges: tuple[tuple[str, str], ...] = ()
    cases: dict[str, dict[str, Any]] = field(default_factory=dict)
    outcomes: dict[str, Side] = field(default_factory=dict)
    queries: dict[str, dict[str, Any]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing


def _expect_object(value: Any, locus: str) -> dict:
    if not isinstance(value, dict):
        raise CasebaseParseError(f"{locus}: expected an object, got {type(value).__name__}")
    return value


def _expect_list(value: Any, locus: str) -> list:
    if not isinstance(value, list):
        raise CasebaseParseError(f"{locus}: expected an array, got {type(value).__name__}")
    return value


def _expect_string(value: Any, locus: str) -> str:
    if not isinstance(value, str):
        raise CasebaseParseError(f"{locus}: expected a string, got {type(value).__name__}")
    return value


def _expect_bool(value: Any, locus: str) -> bool:
    if not isinstance(value, bool):
        raise CasebaseParseError(f"{locus}: expected true or false, got {value!r}")
    return value


def _string_tuple(value: Any, locus: str) -> tuple[str, ...]:
    return tuple(_expect_string(v, f"{locus}[{i}]") for i, v in enumerate(_expect_list(value, locus)))


def _parse_value(value: Any, locus: str) -> Value:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise CasebaseParseError(
            f"{locus}: dimension values must be integers or strings, got {value!r}"
        )
    return value


def _check_keys(obj: dict, allowed: set[str], locus: str) -> None:
    for key in obj:
        if key not in allowed:
            raise CasebaseParseError(f"{locus}: unexpected key {key!r}")


def _parse_factor_assignment(value: Any, locus: str) -> dict[str, bool]:
    obj = _expect_object(value, locus)
    return {name: _expect_bool(v, f"{locus}.{name}") for name, v in obj.items()}


def _parse_dim_assignment(value: Any, locus: str) -> dict[str, Value]:
    obj = _expect_object(value, locus)
    return {name: _parse_value(v, f"{locus}.{name}") for name, v in obj.items()}


def _parse_outcome(value: Any, locus: str) -> Side:
    text = _expect_string(value, locus)
    if text not in (Side.PI.value, Side.DELTA.value):
        raise CasebaseParseError(f"{locus}: outcome must be \"pi\" or \"delta\", got {text!r}")
    return Side(text)


def _parse_flat_case(value: Any, locus: str, dim: bool) -> tuple[dict, Side]:
    obj = _expect_object(value, locus)
    _check_keys(obj, {"facts", "outcome"}, locus)
    for required in ("facts", "outcome"):
        if required not in obj:
            raise CasebaseParseError(f"{locus}: missing key {required!r}")
    parse = _parse_dim_assignment if dim else _parse_factor_assignment
    return parse(obj["facts"], f"{locus}.facts"), _parse_outcome(obj["outcome"], f"{locus}.outcome")


def _parse_dimension(value: Any, locus: str) -> Dimension:
    obj = _expect_object(value, locus)
    _check_keys(obj, {"id", "values", "order", "leq"}, locus)
    for required in ("id", "values"):
        if required not in obj:
            raise CasebaseParseError(f"{locus}: missing key {required!r}")
    dim_id = _expect_string(obj["id"], f"{locus}.id")
    values = tuple(
        _parse_value(v, f"{locus}.values[{i}]")
        for i, v in enumerate(_expect_list(obj["values"], f"{locus}.values"))
    )
    if "order" in obj and "leq" in obj:
        raise CasebaseParseError(f"{locus}: give either \"order\" or \"leq\", not both")
    numeric: str | None = None
    pairs: tuple[tuple[Value, Value], ...] = ()
    if "order" in obj:
        numeric = _expect_string(obj["order"], f"{locus}.order")
        if numeric not in ("ascending", "descending"):
            raise CasebaseParseError(
                f"{locus}.order: expected \"ascending\" or \"descending\", got {numeric!r}"
            )
    elif "leq" in obj:
        raw_pairs = _expect_list(obj["leq"], f"{locus}.leq")
        parsed = []
        for i, pair in enumerate(raw_pairs):
            items = _expect_list(pair, f"{locus}.leq[{i}]")
            if len(items) != 2:
                raise CasebaseParseError(f"{locus}.leq[{i}]: expected a [low, high] pair")
            parsed.append(
                (
                    _parse_value(items[0], f"{locus}.leq[{i}][0]"),
                    _parse_value(items[1], f"{locus}.leq[{i}][1]"),
                )
            )
        pairs = tuple(parsed)
    return Dimension(dim_id, ValueOrder(values, numeric=numeric, leq_pairs=pairs))


def parse_casebase(text: str) -> CaseBaseDocument:
    """Parse document text; structural faults carry a line/field locus."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CasebaseParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    root = _expect_object(data, "document")
    if "model" not in root:
        raise CasebaseParseError("document: missing key 'model'")
    model = _expect_string(root["model"], "model")
    if model not in (FACTOR, DIMENSION):
        raise CasebaseParseError(f"model: expected \"factor\" or \"dimension\", got {model!r}")
    flat = _expect_bool(root.get("flat", False), "flat")

    if model == FACTOR:
        allowed = {"model", "flat", "factors", "cases", "queries"}
        allowed |= {"pro", "con"} if flat else {"edges"}
        _check_keys(root, allowed, "document")
        if "factors" not in root:
            raise CasebaseParseError("document: missing key 'factors'")
        factors = _string_tuple(root["factors"], "factors")
        edges: tuple[Edge, ...] = ()
        pro: tuple[str, ...] = ()
        con: tuple[str, ...] = ()
        if flat:
            pro = _string_tuple(root.get("pro", []), "pro")
            con = _string_tuple(root.get("con", []), "con")
        else:
            raw_edges = _expect_list(root.get("edges", []), "edges")
            parsed_edges = []
            for i, item in enumerate(raw_edges):
                triple = _expect_list(item, f"edges[{i}]")
                if len(triple) != 3:
                    raise CasebaseParseError(f"edges[{i}]: expected [child, parent, polarity]")
                polarity = _expect_string(triple[2], f"edges[{i}][2]")
                if polarity not in (Polarity.PRO.value, Polarity.CON.value):
                    raise CasebaseParseError(
                        f"edges[{i}][2]: polarity must be \"pro\" or \"con\", got {polarity!r}"
                    )
                parsed_edges.append(
                    Edge(
                        _expect_string(triple[0], f"edges[{i}][0]"),
                        _expect_string(triple[1], f"edges[{i}][1]"),
                        Polarity(polarity),
                    )
                )
            edges = tuple(parsed_edges)
        dimensions: tuple[Dimension, ...] = ()
        dim_edges: tuple[tuple[str, str], ...] = ()
    else:
        allowed = {"model", "flat", "dimensions", "cases", "queries"}
        if not flat:
            allowed.add("edges")
        _check_keys(root, allowed, "document")
        if "dimensions" not in root:
            raise CasebaseParseError("document: missing key 'dimensions'")
        dimensions = tuple(
            _parse_dimension(item, f"dimensions[{i}]")
            for i, item in enumerate(_expect_list(root["dimensions"], "dimensions"))
        )
        factors = ()
        edges = ()
        pro = con = ()
        dim_edges = ()
        if not flat:
            raw_edges = _expect_list(root.get("edges", []), "edges")
            parsed_pairs = []
            for i, item in enumerate(raw_edges):
                pair = _expect_list(item, f"edges[{i}]")
                if len(pair) != 2:
                    raise CasebaseParseError(f"edges[{i}]: expected [child, parent]")
                parsed_pairs.append(
                    (
                        _expect_string(pair[0], f"edges[{i}][0]"),
                        _expect_string(pair[1], f"edges[{i}][1]"),
                    )
                )
            dim_edges = tuple(parsed_pairs)

    cases: dict[str, dict] = {}
    outcomes: dict[str, Side] = {}
    for name, value in _expect_object(root.get("cases", {}), "cases").items():
        locus = f"cases.{name}"
        if flat:
            facts, outcome = _parse_flat_case(value, locus, dim=model == DIMENSION)
            cases[name] = facts
            outcomes[name] = outcome
        elif model == FACTOR:
            cases[name] = _parse_factor_assignment(value, locus)
        else:
            cases[name] = _parse_dim_assignment(value, locus)

    queries: dict[str, dict] = {}
    for name, value in _expect_object(root.get("queries", {}), "queries").items():
        locus = f"queries.{name}"
        if model == FACTOR:
            queries[name] = _parse_factor_assignment(value, locus)
        else:
            queries[name] = _parse_dim_assignment(value, locus)

    return CaseBaseDocument(
        model=model,
        flat=flat,
        factors=factors,
        edges=edges,
        pro=pro,
        con=con,
        dimensions=dimensions,
        dim_edges=dim_edges,
        cases=cases,
        outcomes=outcomes,
        queries=queries,
    )


# ---------------------------------------------------------------------------
# semantic validation


def _assignment_violations(
    kind: str,
    owner: str,
    assignment: dict[str, Any],
    declared: frozenset[str],
    complete_over: frozenset[str] | None,
) -> list[Violation]:
    out: list[Violation] = []
    unknown = sorted(set(assignment) - declared)
    for name in unknown:
        out.append(Violation("unknown-name", f"{kind} {owner} refers to undeclared {name!r}"))
    if complete_over is not None:
        missing = sorted(complete_over - set(assignment))
        if missing:
            out.append(
                Violation("incomplete-case", f"case {owner} is not complete: missing {missing}")
            )
    return out


def validate_document(doc: CaseBaseDocument) -> ValidationReport:
    """Exhaustive semantic validation; every violation becomes one entry."""
    out: list[Violation] = []
    if doc.model == FACTOR:
        declared = frozenset(doc.factors)
        if doc.flat:
            seen: set[str] = set()
            for f in doc.factors:
                if f in seen:
                    out.append(Violation("duplicate-factor", f"factor {f!r} is declared twice"))
                seen.add(f)
                if not f:
                    out.append(Violation("empty-factor", "factor names must be non-empty"))
            for label, names in (("pro", doc.pro), ("con", doc.con)):
                for f in names:
                    if f not in declared:
                        out.append(
                            Violation("unknown-name", f"{label} lists undeclared factor {f!r}")
                        )
            overlap = sorted(set(doc.pro) & set(doc.con))
            for f in overlap:
                out.append(Violation("polarity-conflict", f"factor {f!r} is both pro and con"))
            unpartitioned = sorted(declared - set(doc.pro) - set(doc.con))
            for f in unpartitioned:
                out.append(
                    Violation("unpartitioned-factor", f"factor {f!r} is neither pro nor con")
                )
        else:
            out.extend(validate_factor_hierarchy(FactorHierarchy(doc.factors, doc.edges)).violations)
        for section, complete in ((doc.cases, True), (doc.queries, False)):
            kind = "case" if complete else "query"
            for name, facts in section.items():
                out.extend(
                    _assignment_violations(
                        kind, name, facts, declared, declared if complete else None
                    )
                )
                for f, v in facts.items():
                    if not isinstance(v, bool):
                        out.append(
                            Violation(
                                "bad-value",
                                f"{kind} {name} assigns non-boolean {v!r} to {f}",
                            )
                        )
    else:
        declared = frozenset(d.id for d in doc.dimensions)
        orders = {d.id: d.order for d in doc.dimensions}
        if doc.flat:
            seen = set()
            for d in doc.dimensions:
                if d.id in seen:
                    out.append(
                        Violation("duplicate-dimension", f"dimension {d.id!r} is declared twice")
                    )
                seen.add(d.id)
                out.extend(d.order.validate(context=f"dimension {d.id!r}"))
        else:
            hierarchy = DimensionHierarchy(doc.dimensions, doc.dim_edges)
            out.extend(validate_dimension_hierarchy(hierarchy).violations)
        for section, complete in ((doc.cases, True), (doc.queries, False)):
            kind = "case" if complete else "query"
            for name, values in section.items():
                out.extend(
                    _assignment_violations(
                        kind, name, values, declared, declared if complete else None
                    )
                )
                for dim_id, value in values.items():
                    order = orders.get(dim_id)
                    if order is not None and value not in order.value_set:
                        out.append(
                            Violation(
                                "bad-value",
                                f"{kind} {name} assigns {value!r} to {dim_id}, "
                                "not one of its values",
                            )
                        )
    if doc.flat:
        for name in doc.cases:
            if name not in doc.outcomes:
                out.append(Violation("missing-outcome", f"case {name} has no outcome"))
        for name in doc.outcomes:
            if name not in doc.cases:
                out.append(Violation("unknown-name", f"outcome given for unknown case {name!r}"))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# serialization


def _dimension_payload(dim: Dimension) -> dict[str, Any]:
    payload: dict[str, Any] = {"id": dim.id, "values": list(dim.order.values)}
    if dim.order.numeric is not None:
        payload["order"] = dim.order.numeric
    elif dim.order.leq_pairs:
        payload["leq"] = [list(pair) for pair in dim.order.leq_pairs]
    return payload


def serialize_casebase(doc: CaseBaseDocument) -> str:
    """Canonical text for a valid document; faults if validation fails."""
    report = validate_document(doc)
    if not report.ok:
        raise ValueError(f"document is not valid:\n{report}")
    payload: dict[str, Any] = {"model": doc.model}
    if doc.flat:
        payload["flat"] = True
    if doc.model == FACTOR:
        payload["factors"] = list(doc.factors)
        if doc.flat:
            payload["pro"] = list(doc.pro)
            payload["con"] = list(doc.con)
        else:
            payload["edges"] = [[e.child, e.parent, e.polarity.value] for e in doc.edges]
    else:
        payload["dimensions"] = [_dimension_payload(d) for d in doc.dimensions]
        if not doc.flat:
            payload["edges"] = [list(pair) for pair in doc.dim_edges]
    if doc.flat:
        payload["cases"] = {
            name: {"facts": facts, "outcome": doc.outcomes[name].value}
            for name, facts in doc.cases.items()
        }
    else:
        payload["cases"] = dict(doc.cases)
    payload["queries"] = dict(doc.queries)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_casebase(path: str) -> CaseBaseDocument:
    with open(path, encoding="utf-8") as handle:
        return parse_casebase(handle.read())


def save_casebase(doc: CaseBaseDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(serialize_casebase(doc))


# ---------------------------------------------------------------------------
# bridges to the evaluator types


def document_factor_hierarchy(doc: CaseBaseDocument) -> FactorHierarchy:
    return FactorHierarchy(doc.factors, doc.edges)


def document_dimension_hierarchy(doc: CaseBaseDocument) -> DimensionHierarchy:
    return DimensionHierarchy(doc.dimensions, doc.dim_edges)


def document_casebase(
    doc: CaseBaseDocument, names: Sequence[str] | None = None
) -> FactorCaseBase | FlatFactorCaseBase | DimCaseBase | FlatDimCaseBase:
    """Build the evaluator-facing case base for a (subset of) the document.

    names selects cases by name, keeping document order; None takes all.
    Unknown names are a fault, the CLI turns them into usage errors.
    """
    if names is not None:
        unknown = [n for n in names if n not in doc.cases]
        if unknown:
            raise KeyError(f"unknown case names: {unknown}")
        wanted = set(names)
        selected = {n: facts for n, facts in doc.cases.items() if n in wanted}
    else:
        selected = doc.cases
    if doc.model == FACTOR:
        if doc.flat:
            return FlatFactorCaseBase(
                doc.factors,
                frozenset(doc.pro),
                frozenset(doc.con),
                tuple(
                    FlatCase(n, dict(facts), doc.outcomes[n]) for n, facts in selected.items()
                ),
            )
        return FactorCaseBase(
            document_factor_hierarchy(doc),
            tuple(Case(n, dict(facts)) for n, facts in selected.items()),
        )
    if doc.flat:
        return FlatDimCaseBase(
            doc.dimensions,
            tuple(FlatDimCase(n, dict(facts), doc.outcomes[n]) for n, facts in selected.items()),
        )
    return DimCaseBase(
        document_dimension_hierarchy(doc),
        tuple(DimCase(n, dict(facts)) for n, facts in selected.items()),
    )
