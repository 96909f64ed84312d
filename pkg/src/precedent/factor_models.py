"""Flat and hierarchical factor-based forcing.

Fact situations are partial maps from factor names to booleans; a missing
key means the factor's status is unknown, so neither the factor nor its
negation is satisfied.  Cases must be complete; only the query situation
may be partial.  Both evaluators come in a trace-building mode and a fast
mode with identical decision logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .hierarchy import FactorHierarchy, Literal, Side, subordinates
from .trace import (
    DerivationTrace,
    ForcingResult,
    PrecedentAttempt,
    Rule,
    Status,
    Subgoal,
)

FactSituation = Mapping[str, bool]


def _check_assignment(name: str, facts: FactSituation, factors: frozenset[str]) -> None:
    unknown = set(facts) - factors
    if unknown:
        raise ValueError(f"{name} assigns unknown factors: {sorted(unknown)}")
    for f, v in facts.items():
        if not isinstance(v, bool):
            raise ValueError(f"{name} assigns non-boolean value {v!r} to {f}")


def _check_complete(name: str, facts: FactSituation, factors: frozenset[str]) -> None:
    missing = factors - set(facts)
    if missing:
        raise ValueError(f"case {name} is not complete: missing {sorted(missing)}")


@dataclass(frozen=True)
class Case:
    """A precedent: a complete fact situation, outcome included via the

    assignment to the hierarchy's maximal factor."""

    name: str
    facts: dict[str, bool]


@dataclass(frozen=True)
class FactorCaseBase:
    hierarchy: FactorHierarchy
    cases: tuple[Case, ...]

    def __post_init__(self) -> None:
        factors = self.hierarchy.factor_set
        seen: set[str] = set()
        for case in self.cases:
            if case.name in seen:
                raise ValueError(f"duplicate case name {case.name!r}")
            seen.add(case.name)
            _check_assignment(f"case {case.name}", case.facts, factors)
            _check_complete(case.name, case.facts, factors)


@dataclass(frozen=True)
class FlatCase:
    """A precedent in the flat setting: complete facts plus a decided side."""

    name: str
    facts: dict[str, bool]
    outcome: Side


@dataclass(frozen=True)
class FlatFactorCaseBase:
    """Flat setting: no hierarchy, a global pro/con partition of the factors."""

    factors: tuple[str, ...]
    pro: frozenset[str]
    con: frozenset[str]
    cases: tuple[FlatCase, ...]

    def __post_init__(self) -> None:
        factors = frozenset(self.factors)
        if self.pro | self.con != factors or self.pro & self.con:
            raise ValueError("pro and con must partition the factor set")
        seen: set[str] = set()
        for case in self.cases:
            if case.name in seen:
                raise ValueError(f"duplicate case name {case.name!r}")
            seen.add(case.name)
            _check_assignment(f"case {case.name}", case.facts, factors)
            _check_complete(case.name, case.facts, factors)

    def factors_for(self, side: Side) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """(supporting, opposing) factors for a side, in declaration order."""
        pro = tuple(f for f in self.factors if f in self.pro)
        con = tuple(f for f in self.factors if f in self.con)
        return (pro, con) if side is Side.PI else (con, pro)


def satisfies(h: FactorHierarchy, situation: FactSituation, literal: Literal) -> bool:
    """F |= p (F(p) = t) or F |= !p (F(p) = f); undefined satisfies neither."""
    if literal.factor not in h.factor_set:
        raise ValueError(f"unknown factor {literal.factor!r}")
    v = situation.get(literal.factor)
    return v is not None and v != literal.negated


def rm_forces(
    cb: FlatFactorCaseBase,
    situation: FactSituation,
    side: Side,
    with_trace: bool = True,
) -> ForcingResult:
    """Flat result-model forcing.

    The side is forced iff some precedent decided for it whose supporting
    factors all hold in the query and which holds every opposing factor the
    query holds.
    """
    _check_assignment("query", situation, frozenset(cb.factors))
    supporting, opposing = cb.factors_for(side)
    goal = side.value

    if not with_trace:
        for case in cb.cases:
            if case.outcome is not side:
                continue
            facts = case.facts
            if any(facts[q] and not situation.get(q) for q in supporting):
                continue
            if any(situation.get(q) and not facts[q] for q in opposing):
                continue
            return ForcingResult(True, None)
        return ForcingResult(False, None)

    attempts: list[PrecedentAttempt] = []
    winner: PrecedentAttempt | None = None
    for case in cb.cases:
        if case.outcome is not side:
            continue
        facts = case.facts
        subgoals: list[Subgoal] = []
        blocked: str | None = None
        for q in supporting:
            if facts[q]:
                sat = bool(situation.get(q))
                subgoals.append(Subgoal("pro", q, sat, note="precedent satisfies it"))
                if not sat and blocked is None:
                    blocked = q
            else:
                subgoals.append(
                    Subgoal("pro", q, True, vacuous=True, note="precedent does not satisfy it")
                )
        for q in opposing:
            if situation.get(q):
                sat = facts[q]
                subgoals.append(Subgoal("con", q, sat, note="query satisfies it"))
                if not sat and blocked is None:
                    blocked = q
            else:
                subgoals.append(
                    Subgoal("con", q, True, vacuous=True, note="query does not satisfy it")
                )
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
        f"no precedent decided for {goal}"
        if not attempts
        else "every precedent is blocked"
    )
    trace = DerivationTrace(
        goal, Status.NOT_FORCED, attempts=tuple(attempts), failure_witness=witness
    )
    return ForcingResult(False, trace)


def hrm_forces(
    cb: FactorCaseBase,
    situation: FactSituation,
    goal: Literal,
    with_trace: bool = True,
) -> ForcingResult:
    """Hierarchical result-model forcing of a literal.

    Forced iff the query satisfies the literal directly, or the literal is
    abstract and some precedent satisfying it has every pro subordinate it
    satisfies forced for the query and satisfies every con subordinate
    forced for the query.  Basic literals admit only direct satisfaction.
    """
    h = cb.hierarchy
    _check_assignment("query", situation, h.factor_set)
    if goal.factor not in h.factor_set:
        raise ValueError(f"unknown factor {goal.factor!r}")
    memo: dict[tuple[str, bool], object] = {}
    if with_trace:
        result: ForcingResult = _hrm_trace(cb, situation, goal, memo)  # type: ignore[assignment]
        return result
    return ForcingResult(_hrm_fast(cb, situation, goal, memo), None)


def _hrm_fast(
    cb: FactorCaseBase,
    situation: FactSituation,
    literal: Literal,
    memo: dict,
) -> bool:
    key = (literal.factor, literal.negated)
    cached = memo.get(key)
    if cached is not None:
        return cached
    v = situation.get(literal.factor)
    if v is not None and v != literal.negated:
        memo[key] = True
        return True
    forced = False
    if literal.factor not in cb.hierarchy.basic:
        pro, con = subordinates(cb.hierarchy, literal)
        for case in cb.cases:
            facts = case.facts
            if facts[literal.factor] == literal.negated:
                continue  # precedent does not satisfy the literal
            ok = True
            for q in pro:
                if facts[q.factor] and not _hrm_fast(cb, situation, q, memo):
                    ok = False
                    break
            if ok:
                for q in con:
                    if _hrm_fast(cb, situation, q, memo) and not facts[q.factor]:
                        ok = False
                        break
            if ok:
                forced = True
                break
    memo[key] = forced
    return forced


def _hrm_trace(
    cb: FactorCaseBase,
    situation: FactSituation,
    literal: Literal,
    memo: dict,
) -> ForcingResult:
    key = (literal.factor, literal.negated)
    cached = memo.get(key)
    if cached is not None:
        return cached

    goal = str(literal)
    v = situation.get(literal.factor)
    if v is not None and v != literal.negated:
        result = ForcingResult(True, DerivationTrace(goal, Status.FORCED, rule=Rule.DIRECT))
        memo[key] = result
        return result

    basic = literal.factor in cb.hierarchy.basic
    attempts: list[PrecedentAttempt] = []
    winner: PrecedentAttempt | None = None
    if not basic:
        pro, con = subordinates(cb.hierarchy, literal)
        for case in cb.cases:
            facts = case.facts
            if facts[literal.factor] == literal.negated:
                continue
            subgoals: list[Subgoal] = []
            blocked: str | None = None
            for q in pro:
                if facts[q.factor]:
                    inner = _hrm_trace(cb, situation, q, memo)
                    subgoals.append(
                        Subgoal("pro", str(q), inner.forced, note="precedent satisfies it", trace=inner.trace)
                    )
                    if not inner.forced and blocked is None:
                        blocked = str(q)
                else:
                    subgoals.append(
                        Subgoal("pro", str(q), True, vacuous=True, note="precedent does not satisfy it")
                    )
            for q in con:
                inner = _hrm_trace(cb, situation, q, memo)
                if inner.forced:
                    sat = bool(facts[q.factor])
                    subgoals.append(
                        Subgoal("con", str(q), sat, note="forced for the query", trace=inner.trace)
                    )
                    if not sat and blocked is None:
                        blocked = str(q)
                else:
                    subgoals.append(
                        Subgoal(
                            "con",
                            str(q),
                            True,
                            vacuous=True,
                            note="not forced for the query",
                            trace=inner.trace,
                        )
                    )
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
            witness = f"not satisfied directly ({goal} is basic)"
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
