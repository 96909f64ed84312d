"""Derivation traces shared by all four forcing evaluators.

A trace is a tree: one node per forcing question, with the eligible
precedent attempts and their subgoals recorded in evaluation order.  Traces
are plain frozen data, render to indented text, and round-trip through
dicts for JSON output.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional


class Status(Enum):
    FORCED = "FORCED"
    NOT_FORCED = "NOT_FORCED"


class Rule(Enum):
    """Which clause of the forcing definition produced a FORCED verdict."""

    DIRECT = "direct"
    PRECEDENT = "precedent"


@dataclass(frozen=True)
class Subgoal:
    """One conjunct of a precedent instantiation.

    kind is "pro", "con" or "bound".  A subgoal is vacuous when its
    conditional never fires: a pro subordinate the precedent does not
    satisfy, or a con subordinate not forced for the query.  trace is the
    inner derivation when the subgoal required recursion.
    """

    kind: str
    goal: str
    satisfied: bool
    vacuous: bool = False
    note: str | None = None
    trace: Optional["DerivationTrace"] = None


@dataclass(frozen=True)
class PrecedentAttempt:
    case: str
    subgoals: tuple[Subgoal, ...]
    succeeded: bool
    blocked_on: str | None = None


@dataclass(frozen=True)
class DerivationTrace:
    """Outcome of one forcing question.

    children are the subgoals of the successful attempt (empty for DIRECT);
    attempts lists every eligible precedent tried, in case-base order, up
    to and including the winner.  failure_witness summarises what blocks a
    NOT_FORCED verdict.
    """

    goal: str
    status: Status
    rule: Rule | None = None
    precedent: str | None = None
    children: tuple[Subgoal, ...] = ()
    attempts: tuple[PrecedentAttempt, ...] = ()
    failure_witness: str | None = None

    @property
    def forced(self) -> bool:
        return self.status is Status.FORCED


class ForcingResult(NamedTuple):
    forced: bool
    trace: DerivationTrace | None


def trace_depth(trace: DerivationTrace) -> int:
    """Nesting depth of forcing questions (a lone node has depth 1)."""
    inner = [
        trace_depth(sg.trace)
        for attempt in trace.attempts
        for sg in attempt.subgoals
        if sg.trace is not None
    ]
    return 1 + max(inner, default=0)


def trace_to_dict(trace: DerivationTrace) -> dict:
    return {
        "goal": trace.goal,
        "status": trace.status.value,
        "rule": trace.rule.value if trace.rule else None,
        "precedent": trace.precedent,
        "children": [_subgoal_to_dict(sg) for sg in trace.children],
        "attempts": [
            {
                "case": a.case,
                "succeeded": a.succeeded,
                "blocked_on": a.blocked_on,
                "subgoals": [_subgoal_to_dict(sg) for sg in a.subgoals],
            }
            for a in trace.attempts
        ],
        "failure_witness": trace.failure_witness,
    }


def _subgoal_to_dict(sg: Subgoal) -> dict:
    return {
        "kind": sg.kind,
        "goal": sg.goal,
        "satisfied": sg.satisfied,
        "vacuous": sg.vacuous,
        "note": sg.note,
        "trace": trace_to_dict(sg.trace) if sg.trace is not None else None,
    }


def trace_from_dict(data: dict) -> DerivationTrace:
    return DerivationTrace(
        goal=data["goal"],
        status=Status(data["status"]),
        rule=Rule(data["rule"]) if data["rule"] else None,
        precedent=data["precedent"],
        children=tuple(_subgoal_from_dict(d) for d in data["children"]),
        attempts=tuple(
            PrecedentAttempt(
                case=a["case"],
                subgoals=tuple(_subgoal_from_dict(d) for d in a["subgoals"]),
                succeeded=a["succeeded"],
                blocked_on=a["blocked_on"],
            )
            for a in data["attempts"]
        ),
        failure_witness=data["failure_witness"],
    )


def _subgoal_from_dict(data: dict) -> Subgoal:
    return Subgoal(
        kind=data["kind"],
        goal=data["goal"],
        satisfied=data["satisfied"],
        vacuous=data["vacuous"],
        note=data["note"],
        trace=trace_from_dict(data["trace"]) if data["trace"] is not None else None,
    )


def render_trace(trace: DerivationTrace, query: str = "F") -> str:
    """Indented textual unfolding, one line per derivation step."""
    lines: list[str] = []
    _render(trace, query, lines, 0)
    return "\n".join(lines)


def _render(trace: DerivationTrace, query: str, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    verdict = "FORCED" if trace.forced else "NOT FORCED"
    lines.append(f"{pad}{trace.goal}: {verdict}")
    if trace.rule is Rule.DIRECT:
        lines.append(f"{pad}  {query} |= {trace.goal}: holds")
        return
    direct_note = trace.failure_witness if not trace.attempts and trace.failure_witness else None
    lines.append(f"{pad}  {query} |= {trace.goal}: fails")
    for attempt in trace.attempts:
        if attempt.succeeded:
            lines.append(f"{pad}  precedent {attempt.case}: forces {trace.goal}")
        else:
            lines.append(f"{pad}  precedent {attempt.case}: blocked on {attempt.blocked_on}")
        for sg in attempt.subgoals:
            _render_subgoal(sg, query, lines, depth + 2)
    if direct_note is not None:
        lines.append(f"{pad}  {direct_note}")


def _render_subgoal(sg: Subgoal, query: str, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    if sg.vacuous:
        state = "vacuous"
    elif sg.satisfied:
        state = "holds"
    else:
        state = "fails"
    line = f"{pad}[{sg.kind}] {sg.goal}: {state}"
    if sg.note:
        line += f" ({sg.note})"
    lines.append(line)
    if sg.trace is not None:
        _render(sg.trace, query, lines, depth + 1)
