"""Factor and dimension hierarchies, value orders, and their validation.

A factor hierarchy is a finite DAG of boolean factors whose edges carry a
pro/con polarity and which culminates in a single outcome factor.  A
dimension hierarchy is the polarity-free analogue where every node carries
a partially ordered set of values.  Validation never raises: every violated
clause becomes an entry in a :class:`ValidationReport`, so authoring tools
can show all problems at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Union

Value = Union[int, str]


class Polarity(Enum):
    PRO = "pro"
    CON = "con"


class Side(Enum):
    """Outcome side: the positive outcome literal or its negation."""

    PI = "pi"
    DELTA = "delta"

    def other(self) -> "Side":
        return Side.DELTA if self is Side.PI else Side.PI


@dataclass(frozen=True)
class Literal:
    """A factor or its negation."""

    factor: str
    negated: bool = False

    def negate(self) -> "Literal":
        return Literal(self.factor, not self.negated)

    def __str__(self) -> str:
        return "!" + self.factor if self.negated else self.factor


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class Edge:
    """Subordination edge: ``child`` contributes to ``parent`` with a polarity."""

    child: str
    parent: str
    polarity: Polarity


@dataclass(frozen=True)
class FactorHierarchy:
    """Factors plus a polarity-labelled child-to-parent relation.

    Instances are plain data and may be structurally invalid; run
    :func:`validate_factor_hierarchy` before relying on navigation helpers
    that assume a unique maximal factor.  Immutable after construction, so
    concurrent reads are safe.
    """

    factors: tuple[str, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def factor_set(self) -> frozenset[str]:
        return frozenset(self.factors)

    @cached_property
    def edges_into(self) -> dict[str, tuple[Edge, ...]]:
        """Parent factor to its incoming edges, in declaration order."""
        by_parent: dict[str, list[Edge]] = {f: [] for f in self.factors}
        for e in self.edges:
            by_parent.setdefault(e.parent, []).append(e)
        return {p: tuple(es) for p, es in by_parent.items()}

    @cached_property
    def basic(self) -> frozenset[str]:
        """Factors with no subordinates."""
        with_children = {e.parent for e in self.edges}
        return frozenset(f for f in self.factors if f not in with_children)

    @cached_property
    def abstract(self) -> frozenset[str]:
        return self.factor_set - self.basic

    @cached_property
    def maximal(self) -> tuple[str, ...]:
        """Factors that are not subordinate to anything, in declaration order."""
        children = {e.child for e in self.edges}
        return tuple(f for f in self.factors if f not in children)

    @property
    def top(self) -> str:
        """The unique maximal factor.  Requires a validated hierarchy."""
        if len(self.maximal) != 1:
            raise ValueError(
                f"hierarchy does not have a unique maximal factor: {list(self.maximal)}"
            )
        return self.maximal[0]

    @property
    def pi(self) -> Literal:
        return Literal(self.top)

    @property
    def delta(self) -> Literal:
        return Literal(self.top, negated=True)

    def side_literal(self, side: Side) -> Literal:
        return self.pi if side is Side.PI else self.delta

    @cached_property
    def depth(self) -> int:
        """Length (node count) of the longest child chain; bounds recursion."""
        heights: dict[str, int] = {}

        def height(f: str) -> int:
            if f in heights:
                return heights[f]
            heights[f] = 1  # cycle guard; validated hierarchies never hit it
            below = [height(e.child) for e in self.edges_into.get(f, ())]
            heights[f] = 1 + max(below, default=0)
            return heights[f]

        return max((height(f) for f in self.factors), default=0)


def subordinates(h: FactorHierarchy, literal: Literal) -> tuple[tuple[Literal, ...], tuple[Literal, ...]]:
    """Pro and con subordinates of a literal, as positive literals.

    For a negated literal the two sets swap.  Order follows edge declaration
    order, so derivations are deterministic.
    """
    if literal.factor not in h.factor_set:
        raise ValueError(f"unknown factor {literal.factor!r}")
    pro: list[Literal] = []
    con: list[Literal] = []
    for e in h.edges_into.get(literal.factor, ()):
        target = pro if e.polarity is Polarity.PRO else con
        lit = Literal(e.child)
        if lit not in target:
            target.append(lit)
    if literal.negated:
        pro, con = con, pro
    return tuple(pro), tuple(con)


@dataclass(frozen=True)
class ValueOrder:
    """A finite poset of values.

    Either an explicit set of ``leq_pairs`` (closure is computed, not stored)
    or a total numeric order declared as ``"ascending"`` / ``"descending"``
    over integer tokens.
    """

    values: tuple[Value, ...]
    numeric: str | None = None
    leq_pairs: tuple[tuple[Value, Value], ...] = ()

    @cached_property
    def value_set(self) -> frozenset[Value]:
        return frozenset(self.values)

    @cached_property
    def _reachable(self) -> dict[Value, frozenset[Value]]:
        """Reflexive-transitive closure of leq_pairs, as a successor map."""
        succ: dict[Value, set[Value]] = {v: set() for v in self.values}
        for a, b in self.leq_pairs:
            succ.setdefault(a, set()).add(b)
        closure: dict[Value, frozenset[Value]] = {}
        for v in succ:
            seen = {v}
            frontier = [v]
            while frontier:
                nxt = frontier.pop()
                for w in succ.get(nxt, ()):
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
            closure[v] = frozenset(seen)
        return closure

    def leq(self, v: Value, w: Value) -> bool:
        """True iff ``v`` is at most ``w`` in this order."""
        if v not in self.value_set:
            raise ValueError(f"value {v!r} is not in the value set")
        if w not in self.value_set:
            raise ValueError(f"value {w!r} is not in the value set")
        if self.numeric == "ascending":
            return v <= w  # type: ignore[operator]
        if self.numeric == "descending":
            return v >= w  # type: ignore[operator]
        return w in self._reachable[v]

    def validate(self, context: str = "order") -> list[Violation]:
        out: list[Violation] = []
        if not self.values:
            out.append(Violation("empty-values", f"{context}: value set is empty"))
        seen: set[Value] = set()
        for v in self.values:
            if v in seen:
                out.append(Violation("duplicate-value", f"{context}: duplicate value {v!r}"))
            seen.add(v)
        if self.numeric is not None:
            if self.numeric not in ("ascending", "descending"):
                out.append(
                    Violation("bad-order", f"{context}: unknown numeric order {self.numeric!r}")
                )
            for v in self.values:
                if isinstance(v, bool) or not isinstance(v, int):
                    out.append(
                        Violation(
                            "non-integer-value",
                            f"{context}: numeric order requires integer values, got {v!r}",
                        )
                    )
            if self.leq_pairs:
                out.append(
                    Violation(
                        "conflicting-order",
                        f"{context}: both a numeric order and explicit pairs are declared",
                    )
                )
            return out
        for a, b in self.leq_pairs:
            for v in (a, b):
                if v not in self.value_set:
                    out.append(
                        Violation("unknown-value", f"{context}: pair references unknown value {v!r}")
                    )
        if any(v.code == "unknown-value" for v in out):
            return out
        reach = self._reachable
        reported: set[frozenset[Value]] = set()
        for v in self.values:
            for w in reach[v]:
                if w != v and v in reach[w] and frozenset((v, w)) not in reported:
                    reported.add(frozenset((v, w)))
                    out.append(
                        Violation(
                            "antisymmetry",
                            f"{context}: values {v!r} and {w!r} are ordered both ways",
                        )
                    )
        return out


def value_leq(order: ValueOrder, v: Value, w: Value) -> bool:
    """True iff ``v`` precedes ``w`` in the (validated) value order."""
    return order.leq(v, w)


@dataclass(frozen=True)
class Dimension:
    id: str
    order: ValueOrder


@dataclass(frozen=True)
class DimensionHierarchy:
    """Dimensions plus an unlabelled child-to-parent relation."""

    dimensions: tuple[Dimension, ...]
    edges: tuple[tuple[str, str], ...]

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.dimensions)

    @cached_property
    def id_set(self) -> frozenset[str]:
        return frozenset(self.ids)

    @cached_property
    def order_of(self) -> dict[str, ValueOrder]:
        return {d.id: d.order for d in self.dimensions}

    @cached_property
    def subordinates_of(self) -> dict[str, tuple[str, ...]]:
        by_parent: dict[str, list[str]] = {d: [] for d in self.ids}
        for child, parent in self.edges:
            lst = by_parent.setdefault(parent, [])
            if child not in lst:
                lst.append(child)
        return {p: tuple(cs) for p, cs in by_parent.items()}

    def subordinates(self, dim: str) -> tuple[str, ...]:
        if dim not in self.id_set:
            raise ValueError(f"unknown dimension {dim!r}")
        return self.subordinates_of.get(dim, ())

    @cached_property
    def basic(self) -> frozenset[str]:
        with_children = {parent for _, parent in self.edges}
        return frozenset(d for d in self.ids if d not in with_children)

    @cached_property
    def abstract(self) -> frozenset[str]:
        return self.id_set - self.basic

    @cached_property
    def maximal(self) -> tuple[str, ...]:
        children = {child for child, _ in self.edges}
        return tuple(d for d in self.ids if d not in children)

    @property
    def top(self) -> str:
        if len(self.maximal) != 1:
            raise ValueError(
                f"hierarchy does not have a unique maximal dimension: {list(self.maximal)}"
            )
        return self.maximal[0]

    @cached_property
    def depth(self) -> int:
        heights: dict[str, int] = {}
        incoming: dict[str, list[str]] = {d: [] for d in self.ids}
        for child, parent in self.edges:
            incoming.setdefault(parent, []).append(child)

        def height(d: str) -> int:
            if d in heights:
                return heights[d]
            heights[d] = 1
            below = [height(c) for c in incoming.get(d, ())]
            heights[d] = 1 + max(below, default=0)
            return heights[d]

        return max((height(d) for d in self.ids), default=0)


def _find_cycles(nodes: Iterable[str], arcs: Iterable[tuple[str, str]]) -> list[list[str]]:
    """One witness cycle per back edge found by a DFS over child->parent arcs."""
    succ: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in arcs:
        if a in succ and b in succ and b not in succ[a]:
            succ[a].append(b)
    cycles: list[list[str]] = []
    color: dict[str, int] = {n: 0 for n in succ}  # 0 new, 1 on path, 2 done

    def visit(start: str) -> None:
        stack: list[tuple[str, int]] = [(start, 0)]
        path: list[str] = []
        while stack:
            node, idx = stack.pop()
            if idx == 0:
                color[node] = 1
                path.append(node)
            nexts = succ[node]
            if idx < len(nexts):
                stack.append((node, idx + 1))
                target = nexts[idx]
                if color[target] == 1:
                    cycles.append(path[path.index(target):] + [target])
                elif color[target] == 0:
                    stack.append((target, 0))
            else:
                color[node] = 2
                path.pop()

    for n in succ:
        if color[n] == 0:
            visit(n)
    return cycles


def _relation_violations(
    names: tuple[str, ...],
    pairs: list[tuple[str, str]],
    kind: str,
) -> list[Violation]:
    """Violations shared by both hierarchy kinds: references, cycles, maximality."""
    out: list[Violation] = []
    declared = set(names)
    seen_names: set[str] = set()
    for n in names:
        if n in seen_names:
            out.append(Violation(f"duplicate-{kind}", f"{kind} {n!r} is declared twice"))
        seen_names.add(n)
        if not n:
            out.append(Violation(f"empty-{kind}", f"{kind} names must be non-empty"))
    for a, b in pairs:
        for end in (a, b):
            if end not in declared:
                out.append(
                    Violation(f"unknown-{kind}", f"edge ({a!r}, {b!r}) references undeclared {kind} {end!r}")
                )
    usable = [(a, b) for a, b in pairs if a in declared and b in declared]
    for cycle in _find_cycles(names, usable):
        out.append(Violation("cycle", " -> ".join(cycle)))
    children = {a for a, _ in usable}
    maximal = [n for n in names if n not in children]
    if len(set(maximal)) != 1:
        if maximal:
            out.append(
                Violation(
                    "maximal-element",
                    f"expected exactly one maximal {kind}, found {sorted(set(maximal))}",
                )
            )
        else:
            out.append(Violation("maximal-element", f"no maximal {kind} exists"))
    return out


def validate_factor_hierarchy(h: FactorHierarchy) -> ValidationReport:
    """Check acyclicity, the unique outcome factor, and the pro/con partition."""
    out = _relation_violations(h.factors, [(e.child, e.parent) for e in h.edges], "factor")
    seen_pairs: dict[tuple[str, str], Polarity] = {}
    for e in h.edges:
        key = (e.child, e.parent)
        if key in seen_pairs:
            detail = (
                "with conflicting polarities"
                if seen_pairs[key] is not e.polarity
                else "twice with the same polarity"
            )
            out.append(
                Violation("duplicate-edge", f"edge ({e.child!r}, {e.parent!r}) appears {detail}")
            )
        else:
            seen_pairs[key] = e.polarity
    return ValidationReport(tuple(out))


def validate_dimension_hierarchy(h: DimensionHierarchy) -> ValidationReport:
    """Check the relation clauses plus every dimension's value order."""
    out = _relation_violations(h.ids, list(h.edges), "dimension")
    seen_edges: set[tuple[str, str]] = set()
    for edge in h.edges:
        if edge in seen_edges:
            out.append(Violation("duplicate-edge", f"edge {edge!r} appears twice"))
        seen_edges.add(edge)
    for d in h.dimensions:
        out.extend(d.order.validate(context=f"dimension {d.id!r}"))
    return ValidationReport(tuple(out))
