"""Flat and hierarchical dimension-based forcing.

Fact situations assign each dimension a value from that dimension's value
set (a partial choice function).  Higher values in a dimension's order are
better for the pi side.  The hierarchical model answers lower/upper bound
claims: whether precedent forces the query's value on a dimension to be at
least (or at most) a given value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Mapping

from .hierarchy import Dimension, DimensionHierarchy, Side, Value, ValueOrder
from .trace import (
    DerivationTrace,
    ForcingResult,
    PrecedentAttempt,
    Rule,
    Status,
    Subgoal,
)

DimFactSituation = Mapping[str, Value]


class BoundDirection(Enum):
    LOWER = "lower"  # claim: v <= X(d)
    UPPER = "upper"  # claim: X(d) <= v


@dataclass(frozen=True)
class BoundClaim:
    dimension: str
    value: Value
    direction: BoundDirection

    def __str__(self) -> str:
        if self.direction is BoundDirection.LOWER:
            return f"{self.value}<={self.dimension}"
        return f"{self.dimension}<={self.value}"


@dataclass(frozen=True)
class DimCase:
    name: str
    values: dict[str, Value]


@dataclass(frozen=True)
class DimCaseBase:
    hierarchy: DimensionHierarchy
    cases: tuple[DimCase, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for case in self.cases:
            if case.name in seen:
                raise ValueError(f"duplicate case name {case.name!r}")
            seen.add(case.name)
            _check_dim_assignment(f"case {case.name}", case.values, self.hierarchy.order_of)
            missing = self.hierarchy.id_set - set(case.values)
            if missing:
                raise ValueError(f"case {case.name} is not complete: missing {sorted(missing)}")


@dataclass(frozen=True)
class FlatDimCase:
    name: str
    values: dict[str, Value]
    outcome: Side


@dataclass(frozen=True)
class FlatDimCaseBase:
    """Flat setting: a bag of dimensions, outcomes attached to the cases."""

    dimensions: tuple[Dimension, ...]
    cases: tuple[FlatDimCase, ...]

    @cached_property
    def order_of(self) -> dict[str, ValueOrder]:
        return {d.id: d.order for d in self.dimensions}

    def __post_init__(self) -> None:
        orders = self.order_of
        seen: set[str] = set()
        for case in self.cases:
            if case.name in seen:
                raise ValueError(f"duplicate case name {case.name!r}")
            seen.add(case.name)
            _check_dim_assignment(f"case {case.name}", case.values, orders)
            missing = set(orders) - set(case.values)
            if missing:
                raise ValueError(f"case {case.name} is not complete: missing {sorted(missing)}")


def _check_dim_assignment(
    name: str, values: DimFactSituation, orders: Mapping[str, ValueOrder]
) -> None:
    unknown = set(values) - set(orders)
    if unknown:
        raise ValueError(f"{name} assigns unknown dimensions: {sorted(unknown)}")
    for d, v in values.items():
        if v not in orders[d].value_set:
            raise ValueError(f"{name} assigns {v!r} to {d}, not one of its values")


def drm_forces(
    cb: FlatDimCaseBase,
    situation: DimFactSituation,
    side: Side,
    with_trace: bool = True,
) -> ForcingResult:
    """Flat dimension-based forcing.

    Forced for pi iff some precedent decided pi sits at or below the query
    on every dimension; for delta, at or above on every dimension.  The
    query must be complete here: the comparison ranges over all dimensions.
    """
    orders = cb.order_of
    _check_dim_assignment("query", situation, orders)
    missing = set(orders) - set(situation)
    if missing:
        raise ValueError(f"query is not complete: missing {sorted(missing)}")

    goal = side.value
    dims = tuple(d.id for d in cb.dimensions)

    if not with_trace:
        for case in cb.cases:
            if case.outcome is not side:
                continue
            if side is Side.PI:
                ok = all(orders[d].leq(case.values[d], situation[d]) for d in dims)
            else:
                ok = all(orders[d].leq(situation[d], case.values[d]) for d in dims)
            if ok:
                return ForcingResult(True, None)
        return ForcingResult(False, None)

    attempts: list[PrecedentAttempt] = []
    winner: PrecedentAttempt | None = None
    for case in cb.cases:
        if case.outcome is not side:
            continue
        subgoals: list[Subgoal] = []
        blocked: str | None = None
        for d in dims:
            yv, xv = case.values[d], situation[d]
            if side is Side.PI:
                sat = orders[d].leq(yv, xv)
                note = f"{yv} <= {xv}"
            else:
                sat = orders[d].leq(xv, yv)
                note = f"{xv} <= {yv}"
            subgoals.append(Subgoal("bound", d, sat, note=note))
            if not sat and blocked is None:
                blocked = d
        attempt = PrecedentAttempt(case.name, tuple(subgoals), blocked is None, blocked)
        attempts.append(attempt)
        if attempt.succeeded:
            winner = attempt
            break

    if winner is not None:
        trace = DerivationTrace(
            goal,
            Status.FORCED,
            rule=Rule.PRECEDENT,
            precedent=winner.case,
            children=winner.subgoals,
            attempts=tuple(attempts),
        )
        return ForcingResult(True, trace)
    witness = (
        f"no precedent decided for {goal}" if not attempts else "every precedent is blocked"
    )
    trace = DerivationTrace(
        goal, Status.NOT_FORCED, attempts=tuple(attempts), failure_witness=witness
    )
    return ForcingResult(False, trace)


def dhrm_bound(
    cb: DimCaseBase,
    situation: DimFactSituation,
    claim: BoundClaim,
    with_trace: bool = True,
) -> ForcingResult:
    """Hierarchical bound forcing.

    A lower bound v <= X(d) holds iff it holds directly (X defined on d and
    v at most X(d)), or d is abstract and some precedent Y with v <= Y(d)
    has Y(e) <= X(e) recursively forced for every subordinate e of d.
    Upper bounds are the exact mirror.  X undefined on d just makes the
    direct clause fail; it is never an error.
    """
    h = cb.hierarchy
    orders = h.order_of
    _check_dim_assignment("query", situation, orders)
    if claim.dimension not in h.id_set:
        raise ValueError(f"unknown dimension {claim.dimension!r}")
    if claim.value not in orders[claim.dimension].value_set:
        raise ValueError(
            f"value {claim.value!r} is not one of {claim.dimension}'s values"
        )
    memo: dict[tuple[str, Value, BoundDirection], object] = {}
    if with_trace:
        result: ForcingResult = _dhrm_trace(cb, situation, claim, memo)  # type: ignore[assignment]
        return result
    return ForcingResult(_dhrm_fast(cb, situation, claim, memo), None)


def _holds_directly(order, situation: DimFactSituation, claim: BoundClaim) -> bool:
    xv = situation.get(claim.dimension)
    if xv is None:
        return False
    if claim.direction is BoundDirection.LOWER:
        return order.leq(claim.value, xv)
    return order.leq(xv, claim.value)


def _eligible(order, case: DimCase, claim: BoundClaim) -> bool:
    yv = case.values[claim.dimension]
    if claim.direction is BoundDirection.LOWER:
        return order.leq(claim.value, yv)
    return order.leq(yv, claim.value)


def _dhrm_fast(
    cb: DimCaseBase,
    situation: DimFactSituation,
    claim: BoundClaim,
    memo: dict,
) -> bool:
    key = (claim.dimension, claim.value, claim.direction)
    cached = memo.get(key)
    if cached is not None:
        return cached
    d = claim.dimension
    order = cb.hierarchy.order_of[d]
    forced = _holds_directly(order, situation, claim)
    if not forced and d in cb.hierarchy.abstract:
        subs = cb.hierarchy.subordinates(d)
        for case in cb.cases:
            if not _eligible(order, case, claim):
                continue
            ok = True
            for e in subs:
                sub = BoundClaim(e, case.values[e], claim.direction)
                if not _dhrm_fast(cb, situation, sub, memo):
                    ok = False
                    break
            if ok:
                forced = True
                break
    memo[key] = forced
    return forced


def _dhrm_trace(
    cb: DimCaseBase,
    situation: DimFactSituation,
    claim: BoundClaim,
    memo: dict,
) -> ForcingResult:
    key = (claim.dimension, claim.value, claim.direction)
    cached = memo.get(key)
    if cached is not None:
        return cached

    goal = str(claim)
    d = claim.dimension
    order = cb.hierarchy.order_of[d]
    if _holds_directly(order, situation, claim):
        result = ForcingResult(True, DerivationTrace(goal, Status.FORCED, rule=Rule.DIRECT))
        memo[key] = result
        return result

    basic = d not in cb.hierarchy.abstract
    attempts: list[PrecedentAttempt] = []
    winner: PrecedentAttempt | None = None
    if not basic:
        subs = cb.hierarchy.subordinates(d)
        for case in cb.cases:
            if not _eligible(order, case, claim):
                continue
            subgoals: list[Subgoal] = []
            blocked: str | None = None
            for e in subs:
                sub = BoundClaim(e, case.values[e], claim.direction)
                inner = _dhrm_trace(cb, situation, sub, memo)
                subgoals.append(
                    Subgoal("bound", str(sub), inner.forced, trace=inner.trace)
                )
                if not inner.forced and blocked is None:
                    blocked = str(sub)
            attempt = PrecedentAttempt(case.name, tuple(subgoals), blocked is None, blocked)
            attempts.append(attempt)
            if attempt.succeeded:
                winner = attempt
                break

    if winner is not None:
        trace = DerivationTrace(
            goal,
            Status.FORCED,
            rule=Rule.PRECEDENT,
            precedent=winner.case,
            children=winner.subgoals,
            attempts=tuple(attempts),
        )
        result = ForcingResult(True, trace)
    else:
        if basic:
            witness = f"no direct bound and {d} is base-level"
        elif not attempts:
            witness = f"no precedent satisfies {goal}"
        else:
            witness = "every precedent is blocked"
        trace = DerivationTrace(
            goal, Status.NOT_FORCED, attempts=tuple(attempts), failure_witness=witness
        )
        result = ForcingResult(False, trace)
    memo[key] = result
    return result


def dhrm_forces_outcome(
    cb: DimCaseBase,
    situation: DimFactSituation,
    side: Side,
    with_trace: bool = True,
) -> ForcingResult:
    """Outcome forcing through bound claims on the maximal dimension.

    The pi side asks for the lower bound 1 <= X(top), the delta side for
    the upper bound X(top) <= 0.  Requires the outcome dimension to be
    binary with values {0, 1} ordered 0 <= 1.
    """
    top = cb.hierarchy.top
    order = cb.hierarchy.order_of[top]
    if set(order.values) != {0, 1} or not order.leq(0, 1) or order.leq(1, 0):
        raise ValueError(
            f"outcome dimension {top!r} must have values {{0, 1}} ordered 0 <= 1"
        )
    if side is Side.PI:
        claim = BoundClaim(top, 1, BoundDirection.LOWER)
    else:
        claim = BoundClaim(top, 0, BoundDirection.UPPER)
    return dhrm_bound(cb, situation, claim, with_trace=with_trace)
