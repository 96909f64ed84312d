"""Reference evaluators and cross-model checks.

Everything here exists to catch bugs in the main evaluators: naive
unmemoized transcriptions of the forcing definitions, brute-force
enumeration of query situations, consistency checking, the
factor-to-dimension encoding, and the flat/hierarchical bridges.  The
reference evaluators deliberately avoid the navigation helpers the main
evaluators use (they scan raw edge tuples) so that a bug in shared code
cannot hide on both sides of a differential test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator

from .dimension_models import (
    BoundClaim,
    BoundDirection,
    DimCase,
    DimCaseBase,
    DimFactSituation,
    FlatDimCase,
    FlatDimCaseBase,
    dhrm_bound,
    dhrm_forces_outcome,
    drm_forces,
)
from .factor_models import (
    Case,
    FactorCaseBase,
    FactSituation,
    FlatCase,
    FlatFactorCaseBase,
    hrm_forces,
    rm_forces,
)
from .hierarchy import (
    Dimension,
    DimensionHierarchy,
    Edge,
    FactorHierarchy,
    Literal,
    Polarity,
    Side,
    Value,
    ValueOrder,
)


class EnumerationCapError(ValueError):
    """Raised when an exhaustive enumeration would exceed its cap."""


# ---------------------------------------------------------------------------
# reference evaluators


def reference_hrm_forces(cb: FactorCaseBase, situation: FactSituation, literal: Literal) -> bool:
    """Naive transcription of hierarchical factor forcing; no memo, no helpers."""
    v = situation.get(literal.factor)
    if v is not None and v != literal.negated:
        return True
    edges_in = [e for e in cb.hierarchy.edges if e.parent == literal.factor]
    if not edges_in:
        return False  # base-level: only direct satisfaction
    pro_polarity = Polarity.CON if literal.negated else Polarity.PRO
    pro = [e.child for e in edges_in if e.polarity is pro_polarity]
    con = [e.child for e in edges_in if e.polarity is not pro_polarity]
    for case in cb.cases:
        if case.facts[literal.factor] == literal.negated:
            continue
        clause1 = all(
            not case.facts[q] or reference_hrm_forces(cb, situation, Literal(q)) for q in pro
        )
        clause2 = all(
            not reference_hrm_forces(cb, situation, Literal(q)) or case.facts[q] for q in con
        )
        if clause1 and clause2:
            return True
    return False


def _reference_leq(order: ValueOrder, v: Value, w: Value) -> bool:
    """Reachability over the raw pair list; numeric shorthands interpreted inline."""
    if order.numeric == "ascending":
        return v <= w  # type: ignore[operator]
    if order.numeric == "descending":
        return v >= w  # type: ignore[operator]
    if v == w:
        return True
    seen = {v}
    frontier = [v]
    while frontier:
        cur = frontier.pop()
        for a, b in order.leq_pairs:
            if a == cur and b not in seen:
                if b == w:
                    return True
                seen.add(b)
                frontier.append(b)
    return False


def reference_dhrm_bound(cb: DimCaseBase, situation: DimFactSituation, claim: BoundClaim) -> bool:
    """Naive transcription of hierarchical bound forcing, both directions."""
    h = cb.hierarchy
    order = h.order_of[claim.dimension]
    lower = claim.direction is BoundDirection.LOWER
    xv = situation.get(claim.dimension)
    if xv is not None:
        if lower and _reference_leq(order, claim.value, xv):
            return True
        if not lower and _reference_leq(order, xv, claim.value):
            return True
    subs = [child for child, parent in h.edges if parent == claim.dimension]
    if not subs:
        return False
    for case in cb.cases:
        yv = case.values[claim.dimension]
        if lower and not _reference_leq(order, claim.value, yv):
            continue
        if not lower and not _reference_leq(order, yv, claim.value):
            continue
        if all(
            reference_dhrm_bound(cb, situation, BoundClaim(e, case.values[e], claim.direction))
            for e in subs
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# enumeration and consistency


def enumerate_query_situations(h: FactorHierarchy, cap: int = 16) -> Iterator[dict[str, bool]]:
    """All fact situations total on the basic factors, undefined on the rest.

    This is the canonical shape of an undecided situation.  The cap bounds
    the number of basic factors; exceeding it is a fault, never a silent
    truncation.
    """
    basics = tuple(f for f in h.factors if f in h.basic)
    return _enumerate_totals(basics, cap)


def _enumerate_totals(names: tuple[str, ...], cap: int) -> Iterator[dict[str, bool]]:
    if len(names) > cap:
        raise EnumerationCapError(
            f"enumeration over {len(names)} factors needs {2 ** len(names)} situations; "
            f"the cap allows {2 ** cap} (cap={cap})"
        )

    def generate() -> Iterator[dict[str, bool]]:
        for bits in itertools.product((False, True), repeat=len(names)):
            yield dict(zip(names, bits))

    return generate()


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    witnesses: tuple[dict[str, bool], ...]
    checked: int

    def __str__(self) -> str:
        if self.consistent:
            return f"consistent ({self.checked} situations checked)"
        shown = ", ".join(_situation_str(w) for w in self.witnesses)
        return f"inconsistent ({self.checked} situations checked): {shown}"


def _situation_str(situation: FactSituation) -> str:
    parts = [f"{f}={'t' if v else 'f'}" for f, v in situation.items()]
    return "{" + ", ".join(parts) + "}"


def check_consistency(
    cb: FactorCaseBase | FlatFactorCaseBase,
    cap: int = 16,
    max_witnesses: int = 10,
) -> ConsistencyReport:
    """Brute-force search for situations forced for both sides at once.

    Hierarchical case bases are probed with basic-total query situations,
    flat ones with complete assignments.
    """
    if isinstance(cb, FactorCaseBase):
        pi, delta = cb.hierarchy.pi, cb.hierarchy.delta
        situations = enumerate_query_situations(cb.hierarchy, cap=cap)

        def both(f: dict[str, bool]) -> bool:
            return (
                hrm_forces(cb, f, pi, with_trace=False).forced
                and hrm_forces(cb, f, delta, with_trace=False).forced
            )

    else:
        situations = _enumerate_totals(cb.factors, cap)

        def both(f: dict[str, bool]) -> bool:
            return (
                rm_forces(cb, f, Side.PI, with_trace=False).forced
                and rm_forces(cb, f, Side.DELTA, with_trace=False).forced
            )

    witnesses: list[dict[str, bool]] = []
    checked = 0
    for situation in situations:
        checked += 1
        if both(situation) and len(witnesses) < max_witnesses:
            witnesses.append(situation)
    return ConsistencyReport(not witnesses, tuple(witnesses), checked)


# ---------------------------------------------------------------------------
# factor-to-dimension encoding and flat/hierarchical bridges


def encode_fact_situation(facts: FactSituation) -> dict[str, int]:
    """t becomes 1, f becomes 0; undefined stays undefined."""
    return {f: 1 if v else 0 for f, v in facts.items()}


def encode_factors_as_dimensions(cb: FlatFactorCaseBase) -> FlatDimCaseBase:
    """Each factor becomes a binary dimension whose order reflects its polarity.

    Supporting factors order 0 below 1, opposing factors 1 below 0, so that
    a higher value is always the better one for the pi side.
    """
    dims = tuple(
        Dimension(
            f,
            ValueOrder((0, 1), numeric="ascending" if f in cb.pro else "descending"),
        )
        for f in cb.factors
    )
    cases = tuple(
        FlatDimCase(c.name, encode_fact_situation(c.facts), c.outcome) for c in cb.cases
    )
    return FlatDimCaseBase(dims, cases)


def flatten_factor_casebase(cb: FactorCaseBase) -> FlatFactorCaseBase:
    """Project a one-level hierarchy onto the flat model.

    Only defined when the outcome factor is the sole abstract factor; the
    outcome edge polarities become the global pro/con partition and each
    case's value on the outcome factor becomes its decided side.
    """
    h = cb.hierarchy
    top = h.top
    if h.abstract != frozenset((top,)):
        raise ValueError("flat projection requires the outcome factor to be the only abstract one")
    pro = frozenset(e.child for e in h.edges if e.polarity is Polarity.PRO)
    con = frozenset(e.child for e in h.edges if e.polarity is Polarity.CON)
    factors = tuple(f for f in h.factors if f != top)
    cases = tuple(
        FlatCase(
            c.name,
            {f: c.facts[f] for f in factors},
            Side.PI if c.facts[top] else Side.DELTA,
        )
        for c in cb.cases
    )
    return FlatFactorCaseBase(factors, pro, con, cases)


def lift_flat_casebase(cb: FlatFactorCaseBase, top: str = "OUT") -> FactorCaseBase:
    """Inverse of the flat projection: wrap the partition into a one-level hierarchy."""
    if top in cb.factors:
        raise ValueError(f"factor name {top!r} is taken; pick another outcome name")
    edges = tuple(
        Edge(f, top, Polarity.PRO if f in cb.pro else Polarity.CON) for f in cb.factors
    )
    h = FactorHierarchy(cb.factors + (top,), edges)
    cases = tuple(
        Case(c.name, {**c.facts, top: c.outcome is Side.PI}) for c in cb.cases
    )
    return FactorCaseBase(h, cases)


def flatten_dim_casebase(cb: DimCaseBase) -> FlatDimCaseBase:
    """Dimension analogue of the flat projection (binary outcome dimension)."""
    h = cb.hierarchy
    top = h.top
    if h.abstract != frozenset((top,)):
        raise ValueError("flat projection requires the outcome dimension to be the only abstract one")
    order = h.order_of[top]
    if set(order.values) != {0, 1} or not order.leq(0, 1) or order.leq(1, 0):
        raise ValueError(f"outcome dimension {top!r} must have values {{0, 1}} ordered 0 <= 1")
    dims = tuple(d for d in h.dimensions if d.id != top)
    cases = tuple(
        FlatDimCase(
            c.name,
            {d.id: c.values[d.id] for d in dims},
            Side.PI if c.values[top] == 1 else Side.DELTA,
        )
        for c in cb.cases
    )
    return FlatDimCaseBase(dims, cases)


def lift_flat_dim_casebase(cb: FlatDimCaseBase, top: str = "OUT") -> DimCaseBase:
    if any(d.id == top for d in cb.dimensions):
        raise ValueError(f"dimension name {top!r} is taken; pick another outcome name")
    outcome = Dimension(top, ValueOrder((0, 1), numeric="ascending"))
    edges = tuple((d.id, top) for d in cb.dimensions)
    h = DimensionHierarchy(cb.dimensions + (outcome,), edges)
    cases = tuple(
        DimCase(c.name, {**c.values, top: 1 if c.outcome is Side.PI else 0}) for c in cb.cases
    )
    return DimCaseBase(h, cases)


# ---------------------------------------------------------------------------
# randomized instance generators


def random_factor_hierarchy(rng: Random, n_factors: int) -> FactorHierarchy:
    """A random DAG with a unique top: every non-top factor points upward."""
    names = tuple(f"N{i}" for i in range(1, n_factors + 1))
    edges: list[Edge] = []
    seen: set[tuple[str, str]] = set()
    for i in range(n_factors - 1):
        parents = [rng.randrange(i + 1, n_factors)]
        if rng.random() < 0.3 and i + 1 < n_factors - 1:
            parents.append(rng.randrange(i + 1, n_factors))
        for j in parents:
            pair = (names[i], names[j])
            if pair in seen:
                continue
            seen.add(pair)
            polarity = Polarity.PRO if rng.random() < 0.7 else Polarity.CON
            edges.append(Edge(names[i], names[j], polarity))
    return FactorHierarchy(names, tuple(edges))


def random_factor_casebase(rng: Random, h: FactorHierarchy, n_cases: int) -> FactorCaseBase:
    cases = tuple(
        Case(f"C{i}", {f: rng.random() < 0.5 for f in h.factors})
        for i in range(1, n_cases + 1)
    )
    return FactorCaseBase(h, cases)


def random_partial_situation(rng: Random, h: FactorHierarchy) -> dict[str, bool]:
    out: dict[str, bool] = {}
    for f in h.factors:
        p = 0.8 if f in h.basic else 0.25
        if rng.random() < p:
            out[f] = rng.random() < 0.5
    return out


def random_literal(rng: Random, h: FactorHierarchy) -> Literal:
    return Literal(rng.choice(h.factors), rng.random() < 0.3)


_DIAMOND = (("lo", "a"), ("lo", "b"), ("a", "hi"), ("b", "hi"))


def random_value_order(rng: Random) -> ValueOrder:
    kind = rng.randrange(3)
    if kind == 0:
        return ValueOrder(tuple(range(rng.randint(2, 5))), numeric="ascending")
    if kind == 1:
        return ValueOrder(tuple(range(rng.randint(2, 5))), numeric="descending")
    return ValueOrder(("lo", "a", "b", "hi"), leq_pairs=_DIAMOND)


def random_dimension_hierarchy(rng: Random, n_dims: int) -> DimensionHierarchy:
    """Random DAG shaped like random_factor_hierarchy; binary outcome on top."""
    names = tuple(f"N{i}" for i in range(1, n_dims + 1))
    dims = tuple(Dimension(n, random_value_order(rng)) for n in names[:-1]) + (
        Dimension(names[-1], ValueOrder((0, 1), numeric="ascending")),
    )
    edges: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for i in range(n_dims - 1):
        parents = [rng.randrange(i + 1, n_dims)]
        if rng.random() < 0.3 and i + 1 < n_dims - 1:
            parents.append(rng.randrange(i + 1, n_dims))
        for j in parents:
            pair = (names[i], names[j])
            if pair not in seen:
                seen.add(pair)
                edges.append(pair)
    return DimensionHierarchy(dims, tuple(edges))


def random_dim_casebase(rng: Random, h: DimensionHierarchy, n_cases: int) -> DimCaseBase:
    cases = tuple(
        DimCase(f"C{i}", {d.id: rng.choice(d.order.values) for d in h.dimensions})
        for i in range(1, n_cases + 1)
    )
    return DimCaseBase(h, cases)


def random_dim_situation(rng: Random, h: DimensionHierarchy) -> dict[str, Value]:
    out: dict[str, Value] = {}
    for d in h.dimensions:
        p = 0.8 if d.id in h.basic else 0.25
        if rng.random() < p:
            out[d.id] = rng.choice(d.order.values)
    return out


def random_bound_claim(rng: Random, h: DimensionHierarchy) -> BoundClaim:
    dim = rng.choice(h.dimensions)
    direction = BoundDirection.LOWER if rng.random() < 0.5 else BoundDirection.UPPER
    return BoundClaim(dim.id, rng.choice(dim.order.values), direction)


def random_flat_casebase(rng: Random, n_factors: int, n_cases: int) -> FlatFactorCaseBase:
    factors = tuple(f"B{i}" for i in range(1, n_factors + 1))
    pro = frozenset(f for f in factors if rng.random() < 0.5)
    con = frozenset(factors) - pro
    cases = tuple(
        FlatCase(
            f"C{i}",
            {f: rng.random() < 0.5 for f in factors},
            Side.PI if rng.random() < 0.5 else Side.DELTA,
        )
        for i in range(1, n_cases + 1)
    )
    return FlatFactorCaseBase(factors, pro, con, cases)


# ---------------------------------------------------------------------------
# cross-model checks


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    checked: int
    counterexample: str | None = None

    def __str__(self) -> str:
        if self.passed:
            return f"pass ({self.checked} checks)"
        return f"FAIL after {self.checked} checks: {self.counterexample}"


def _flat_reduction_mismatch(
    cb: FactorCaseBase,
    flat: FlatFactorCaseBase,
    situation: FactSituation,
    side: Side,
) -> str | None:
    literal = cb.hierarchy.side_literal(side)
    hierarchical = hrm_forces(cb, situation, literal, with_trace=False).forced
    flat_verdict = rm_forces(flat, situation, side, with_trace=False).forced
    if hierarchical == flat_verdict:
        return None
    return (
        f"hierarchical={hierarchical} flat={flat_verdict} side={side.value} "
        f"situation={_situation_str(situation)} cases={[c.name for c in cb.cases]}"
    )


def _polarity_maps(basics: tuple[str, ...]) -> Iterator[tuple[Edge, ...]]:
    for bits in itertools.product((Polarity.PRO, Polarity.CON), repeat=len(basics)):
        yield tuple(Edge(b, "OUT", p) for b, p in zip(basics, bits))


def _case_combos(
    possible: list[dict[str, bool]], max_cases: int
) -> Iterator[tuple[dict[str, bool], ...]]:
    for r in range(max_cases + 1):
        yield from itertools.combinations(possible, r)


def exhaustive_flat_reduction_check(
    basic_counts: Iterable[int], max_cases: int
) -> CheckResult:
    """Hierarchical vs flat verdicts over every instance of the given sizes.

    For each basic-factor count: every pro/con polarity assignment, every
    case base of at most max_cases distinct cases, every basic-total query,
    both sides.
    """
    checked = 0
    for n in basic_counts:
        basics = tuple(f"B{i}" for i in range(1, n + 1))
        factors = basics + ("OUT",)
        assignments = [
            dict(zip(factors, bits))
            for bits in itertools.product((False, True), repeat=len(factors))
        ]
        queries = [
            dict(zip(basics, bits))
            for bits in itertools.product((False, True), repeat=n)
        ]
        for edges in _polarity_maps(basics):
            h = FactorHierarchy(factors, edges)
            for combo in _case_combos(assignments, max_cases):
                cb = FactorCaseBase(
                    h, tuple(Case(f"C{i}", a) for i, a in enumerate(combo, start=1))
                )
                flat = flatten_factor_casebase(cb)
                for query in queries:
                    for side in (Side.PI, Side.DELTA):
                        checked += 1
                        mismatch = _flat_reduction_mismatch(cb, flat, query, side)
                        if mismatch:
                            return CheckResult(False, checked, mismatch)
    return CheckResult(True, checked)


def random_flat_reduction_check(
    rng: Random,
    rounds: int,
    basic_counts: tuple[int, ...] = (4, 5),
    max_cases: int = 3,
) -> CheckResult:
    """Seeded random multi-case instances on shapes too big to sweep."""
    checked = 0
    for _ in range(rounds):
        n = rng.choice(basic_counts)
        basics = tuple(f"B{i}" for i in range(1, n + 1))
        factors = basics + ("OUT",)
        edges = tuple(
            Edge(b, "OUT", Polarity.PRO if rng.random() < 0.5 else Polarity.CON)
            for b in basics
        )
        h = FactorHierarchy(factors, edges)
        cases = tuple(
            Case(f"C{i}", {f: rng.random() < 0.5 for f in factors})
            for i in range(1, rng.randint(0, max_cases) + 1)
        )
        cb = FactorCaseBase(h, cases)
        flat = flatten_factor_casebase(cb)
        query = {b: rng.random() < 0.5 for b in basics}
        side = Side.PI if rng.random() < 0.5 else Side.DELTA
        checked += 1
        mismatch = _flat_reduction_mismatch(cb, flat, query, side)
        if mismatch:
            return CheckResult(False, checked, mismatch)
    return CheckResult(True, checked)


def _encoding_mismatch(
    cb: FlatFactorCaseBase,
    encoded: FlatDimCaseBase,
    situation: dict[str, bool],
    side: Side,
) -> str | None:
    factor_verdict = rm_forces(cb, situation, side, with_trace=False).forced
    dim_verdict = drm_forces(
        encoded, encode_fact_situation(situation), side, with_trace=False
    ).forced
    if factor_verdict == dim_verdict:
        return None
    return (
        f"factor={factor_verdict} dimension={dim_verdict} side={side.value} "
        f"situation={_situation_str(situation)} pro={sorted(cb.pro)} "
        f"cases={[(c.name, c.outcome.value) for c in cb.cases]}"
    )


def exhaustive_encoding_check(factor_counts: Iterable[int], max_cases: int) -> CheckResult:
    """Factor vs encoded-dimension verdicts over every instance of the sizes.

    For each factor count: every polarity partition, every case base of at
    most max_cases distinct cases, the full truth table of queries, both
    sides.
    """
    checked = 0
    for n in factor_counts:
        factors = tuple(f"B{i}" for i in range(1, n + 1))
        truth_table = [
            dict(zip(factors, bits))
            for bits in itertools.product((False, True), repeat=n)
        ]
        possible = [
            FlatCase(f"C{i}", dict(assignment), side)
            for i, (assignment, side) in enumerate(
                itertools.product(
                    [tuple(a.items()) for a in truth_table], (Side.PI, Side.DELTA)
                ),
                start=1,
            )
        ]
        for bits in itertools.product((True, False), repeat=n):
            pro = frozenset(f for f, b in zip(factors, bits) if b)
            con = frozenset(factors) - pro
            for combo in _case_combos(possible, max_cases):
                cb = FlatFactorCaseBase(factors, pro, con, tuple(combo))
                encoded = encode_factors_as_dimensions(cb)
                for query in truth_table:
                    for side in (Side.PI, Side.DELTA):
                        checked += 1
                        mismatch = _encoding_mismatch(cb, encoded, query, side)
                        if mismatch:
                            return CheckResult(False, checked, mismatch)
    return CheckResult(True, checked)


def random_encoding_check(
    rng: Random,
    rounds: int,
    factor_counts: tuple[int, ...] = (4, 5),
    max_cases: int = 3,
) -> CheckResult:
    checked = 0
    for _ in range(rounds):
        n = rng.choice(factor_counts)
        cb = random_flat_casebase(rng, n, rng.randint(0, max_cases))
        encoded = encode_factors_as_dimensions(cb)
        query = {f: rng.random() < 0.5 for f in cb.factors}
        side = Side.PI if rng.random() < 0.5 else Side.DELTA
        checked += 1
        mismatch = _encoding_mismatch(cb, encoded, query, side)
        if mismatch:
            return CheckResult(False, checked, mismatch)
    return CheckResult(True, checked)


def encoding_doc_check(cb: FlatFactorCaseBase, cap: int = 16) -> CheckResult:
    """Factor vs encoded-dimension verdicts for one case base over the full
    truth table of queries, both sides."""
    encoded = encode_factors_as_dimensions(cb)
    checked = 0
    for situation in _enumerate_totals(cb.factors, cap):
        for side in (Side.PI, Side.DELTA):
            checked += 1
            mismatch = _encoding_mismatch(cb, encoded, situation, side)
            if mismatch:
                return CheckResult(False, checked, mismatch)
    return CheckResult(True, checked)


def random_hrm_differential(rng: Random, rounds: int) -> CheckResult:
    """Main hierarchical factor evaluator vs its naive transcription."""
    checked = 0
    for _ in range(rounds):
        h = random_factor_hierarchy(rng, rng.randint(2, 7))
        cb = random_factor_casebase(rng, h, rng.randint(0, 4))
        situation = random_partial_situation(rng, h)
        literal = random_literal(rng, h)
        checked += 1
        fast = hrm_forces(cb, situation, literal, with_trace=False).forced
        traced = hrm_forces(cb, situation, literal, with_trace=True).forced
        ref = reference_hrm_forces(cb, situation, literal)
        if fast != ref or traced != ref:
            return CheckResult(
                False,
                checked,
                f"main={fast} traced={traced} reference={ref} literal={literal} "
                f"situation={_situation_str(situation)} hierarchy={h.edges}",
            )
    return CheckResult(True, checked)


def differential_check_factor(
    cb: FactorCaseBase, queries: Iterable[tuple[str, FactSituation]]
) -> CheckResult:
    """Main vs reference hierarchical evaluator over named query situations,
    every factor, both signs."""
    checked = 0
    for qname, situation in queries:
        for f in cb.hierarchy.factors:
            for negated in (False, True):
                literal = Literal(f, negated)
                checked += 1
                fast = hrm_forces(cb, situation, literal, with_trace=False).forced
                traced = hrm_forces(cb, situation, literal).forced
                ref = reference_hrm_forces(cb, situation, literal)
                if fast != ref or traced != ref:
                    return CheckResult(
                        False,
                        checked,
                        f"query {qname}, literal {literal}: "
                        f"main={fast} traced={traced} reference={ref}",
                    )
    return CheckResult(True, checked)


def differential_check_dimension(
    cb: DimCaseBase, queries: Iterable[tuple[str, DimFactSituation]]
) -> CheckResult:
    """Main vs reference bound evaluator over named queries, every dimension,
    every value, both directions."""
    checked = 0
    for qname, situation in queries:
        for dim in cb.hierarchy.dimensions:
            for value in dim.order.values:
                for direction in (BoundDirection.LOWER, BoundDirection.UPPER):
                    claim = BoundClaim(dim.id, value, direction)
                    checked += 1
                    fast = dhrm_bound(cb, situation, claim, with_trace=False).forced
                    traced = dhrm_bound(cb, situation, claim).forced
                    ref = reference_dhrm_bound(cb, situation, claim)
                    if fast != ref or traced != ref:
                        return CheckResult(
                            False,
                            checked,
                            f"query {qname}, claim {claim}: "
                            f"main={fast} traced={traced} reference={ref}",
                        )
    return CheckResult(True, checked)


def flat_reduction_doc_check(
    cb: FactorCaseBase,
    extra_queries: Iterable[FactSituation] = (),
    cap: int = 16,
) -> CheckResult:
    """Hierarchical vs flat verdicts for one case base over every basic-total
    query (plus any extra query situations over the basic factors)."""
    flat = flatten_factor_casebase(cb)
    checked = 0
    for situation in itertools.chain(
        enumerate_query_situations(cb.hierarchy, cap=cap), extra_queries
    ):
        for side in (Side.PI, Side.DELTA):
            checked += 1
            mismatch = _flat_reduction_mismatch(cb, flat, situation, side)
            if mismatch:
                return CheckResult(False, checked, mismatch)
    return CheckResult(True, checked)


def dim_flat_reduction_check(cb: DimCaseBase, cap: int = 4096) -> CheckResult:
    """Outcome forcing vs the flat dimension model over all basic-total
    queries of a one-level dimension hierarchy."""
    flat = flatten_dim_casebase(cb)
    basics = tuple(d for d in cb.hierarchy.ids if d in cb.hierarchy.basic)
    orders = cb.hierarchy.order_of
    total = math.prod(len(orders[d].values) for d in basics)
    if total > cap:
        raise EnumerationCapError(
            f"enumeration over {len(basics)} dimensions needs {total} situations; "
            f"the cap allows {cap}"
        )
    checked = 0
    for combo in itertools.product(*(orders[d].values for d in basics)):
        situation = dict(zip(basics, combo))
        for side in (Side.PI, Side.DELTA):
            checked += 1
            hierarchical = dhrm_forces_outcome(cb, situation, side, with_trace=False).forced
            flat_verdict = drm_forces(flat, situation, side, with_trace=False).forced
            if hierarchical != flat_verdict:
                return CheckResult(
                    False,
                    checked,
                    f"side={side.value} situation={situation} "
                    f"hierarchical={hierarchical} flat={flat_verdict}",
                )
    return CheckResult(True, checked)


def random_flat_dim_casebase(rng: Random, n_dims: int, n_cases: int) -> FlatDimCaseBase:
    dims = tuple(Dimension(f"B{i}", random_value_order(rng)) for i in range(1, n_dims + 1))
    cases = tuple(
        FlatDimCase(
            f"C{i}",
            {d.id: rng.choice(d.order.values) for d in dims},
            Side.PI if rng.random() < 0.5 else Side.DELTA,
        )
        for i in range(1, n_cases + 1)
    )
    return FlatDimCaseBase(dims, cases)


def random_dhrm_differential(rng: Random, rounds: int) -> CheckResult:
    """Main hierarchical dimension evaluator vs its naive transcription."""
    checked = 0
    for _ in range(rounds):
        h = random_dimension_hierarchy(rng, rng.randint(2, 6))
        cb = random_dim_casebase(rng, h, rng.randint(0, 4))
        situation = random_dim_situation(rng, h)
        claim = random_bound_claim(rng, h)
        checked += 1
        fast = dhrm_bound(cb, situation, claim, with_trace=False).forced
        traced = dhrm_bound(cb, situation, claim, with_trace=True).forced
        ref = reference_dhrm_bound(cb, situation, claim)
        if fast != ref or traced != ref:
            return CheckResult(
                False,
                checked,
                f"main={fast} traced={traced} reference={ref} claim={claim} "
                f"situation={situation}",
            )
    return CheckResult(True, checked)
