"""Flat and hierarchical factor forcing, including the worked family scenarios."""

from __future__ import annotations

import pytest

from precedent.factor_models import (
    Case,
    FactorCaseBase,
    FlatCase,
    FlatFactorCaseBase,
    hrm_forces,
    rm_forces,
    satisfies,
)
from precedent.hierarchy import Edge, FactorHierarchy, Literal, Polarity, Side
from precedent.trace import Rule, Status, trace_depth

from conftest import (
    case_m,
    case_mdprime,
    case_mprime,
    family_hierarchy,
    flat_family_casebase,
    query_e,
    query_e_with_p,
    query_edprime,
    query_edprime_with_p,
    query_eprime,
)


def test_satisfies_positive_negative_undefined(hierarchy):
    situation = {"F1": True, "F2": False}
    assert satisfies(hierarchy, situation, Literal("F1"))
    assert not satisfies(hierarchy, situation, Literal("F1", negated=True))
    assert satisfies(hierarchy, situation, Literal("F2", negated=True))
    assert not satisfies(hierarchy, situation, Literal("F2"))
    # undefined satisfies neither sign
    assert not satisfies(hierarchy, situation, Literal("F3"))
    assert not satisfies(hierarchy, situation, Literal("F3", negated=True))


def test_satisfies_unknown_factor(hierarchy):
    with pytest.raises(ValueError, match="unknown factor"):
        satisfies(hierarchy, {}, Literal("Zed"))


def test_casebase_rejects_incomplete_case(hierarchy):
    with pytest.raises(ValueError, match="not complete"):
        FactorCaseBase(hierarchy, (Case("C", {"F1": True}),))


def test_casebase_rejects_unknown_factor(hierarchy):
    facts = dict(case_m().facts, Zed=True)
    with pytest.raises(ValueError, match="unknown factors"):
        FactorCaseBase(hierarchy, (Case("C", facts),))


def test_casebase_rejects_duplicate_names(hierarchy):
    with pytest.raises(ValueError, match="duplicate case name"):
        FactorCaseBase(hierarchy, (case_m(), Case("M", case_m().facts)))


def test_casebase_rejects_non_boolean_values(hierarchy):
    facts = dict(case_m().facts, F1=1)
    with pytest.raises(ValueError, match="non-boolean"):
        FactorCaseBase(hierarchy, (Case("C", facts),))


def test_query_with_unknown_factor_faults(cb_m, hierarchy):
    with pytest.raises(ValueError, match="unknown factors"):
        hrm_forces(cb_m, {"Zed": True}, hierarchy.pi)


def test_unknown_goal_factor_faults(cb_m):
    with pytest.raises(ValueError, match="unknown factor"):
        hrm_forces(cb_m, {}, Literal("Zed"))


# ---------------------------------------------------------------------------
# hierarchical forcing


def test_direct_satisfaction_short_circuits(cb_m):
    result = hrm_forces(cb_m, {"Q": True}, Literal("Q"))
    assert result.forced
    assert result.trace.rule is Rule.DIRECT
    assert result.trace.attempts == ()


def test_basic_literal_admits_only_direct(cb_m):
    # M satisfies F1, but precedent cannot force a base-level factor
    result = hrm_forces(cb_m, {}, Literal("F1"))
    assert not result.forced
    assert result.trace.attempts == ()
    assert "basic" in result.trace.failure_witness


def test_family_not_forced_reduction_chain(cb_m, hierarchy):
    result = hrm_forces(cb_m, query_e(), hierarchy.pi)
    assert not result.forced
    root = result.trace
    assert root.status is Status.NOT_FORCED
    (attempt,) = root.attempts
    assert attempt.case == "M"
    assert attempt.blocked_on == "Q"
    # every subgoal of the attempt is recorded even after the first block
    assert [sg.goal for sg in attempt.subgoals] == ["Q", "R"]


def test_family_forced_with_p(cb_m, hierarchy):
    result = hrm_forces(cb_m, query_e_with_p(), hierarchy.pi)
    assert result.forced
    assert result.trace.precedent == "M"
    assert result.trace.rule is Rule.PRECEDENT


def test_family_delta_not_forced(cb_m, hierarchy):
    # M was decided for the pi side, so it never supports delta
    result = hrm_forces(cb_m, query_e(), hierarchy.delta)
    assert not result.forced
    assert result.trace.attempts == ()
    assert "no precedent" in result.trace.failure_witness


def test_negated_goal_uses_swapped_subordinates(hierarchy):
    # a case decided against ice cream, matched by a rainy query
    facts = {
        "F1": False, "F2": False, "F3": False, "F4": False, "F5": True,
        "F6": False, "P": False, "Q": False, "R": False, "IceCream": False,
    }
    cb = FactorCaseBase(hierarchy, (Case("N", facts),))
    result = hrm_forces(cb, {"F5": True}, Literal("R", negated=True))
    assert result.forced
    assert result.trace.precedent == "N"


def test_eligibility_requires_precedent_to_satisfy_goal(cb_m, hierarchy):
    # M satisfies IceCream, so for !IceCream it is not an eligible precedent
    result = hrm_forces(cb_m, {}, hierarchy.delta)
    assert not result.forced
    assert result.trace.attempts == ()


def test_empty_casebase_forces_nothing(hierarchy):
    cb = FactorCaseBase(hierarchy, ())
    assert not hrm_forces(cb, query_e(), hierarchy.pi).forced
    assert hrm_forces(cb, {"IceCream": True}, hierarchy.pi).forced  # direct still works


def test_attempts_follow_casebase_order(hierarchy):
    cb = FactorCaseBase(hierarchy, (case_m(), case_mprime()))
    result = hrm_forces(cb, query_e(), hierarchy.pi)
    assert [a.case for a in result.trace.attempts] == ["M", "Mprime"]


def test_winning_attempt_ends_the_scan(hierarchy):
    cb = FactorCaseBase(hierarchy, (case_m(), case_mprime()))
    result = hrm_forces(cb, query_e_with_p(), hierarchy.pi)
    assert result.forced
    assert [a.case for a in result.trace.attempts] == ["M"]


def test_fast_mode_matches_traced_mode(hierarchy):
    cb = FactorCaseBase(hierarchy, (case_m(), case_mprime(), case_mdprime()))
    queries = [query_e(), query_e_with_p(), query_eprime(), query_edprime(), {}]
    for situation in queries:
        for factor in hierarchy.factors:
            for negated in (False, True):
                literal = Literal(factor, negated)
                fast = hrm_forces(cb, situation, literal, with_trace=False)
                traced = hrm_forces(cb, situation, literal, with_trace=True)
                assert fast.forced == traced.forced
                assert fast.trace is None and traced.trace is not None


def test_trace_depth_bounded_by_hierarchy_depth(cb_m, hierarchy):
    result = hrm_forces(cb_m, query_e(), hierarchy.pi)
    assert trace_depth(result.trace) <= hierarchy.depth


# ---------------------------------------------------------------------------
# flat forcing


def test_flat_partition_must_cover_factors():
    with pytest.raises(ValueError, match="partition"):
        FlatFactorCaseBase(("A", "B"), frozenset({"A"}), frozenset(), ())
    with pytest.raises(ValueError, match="partition"):
        FlatFactorCaseBase(("A",), frozenset({"A"}), frozenset({"A"}), ())


def test_factors_for_orients_the_partition(flat_cb):
    supporting, opposing = flat_cb.factors_for(Side.PI)
    assert supporting == ("F1", "F2", "F4")
    assert opposing == ("F3", "F5", "F6")
    supporting, opposing = flat_cb.factors_for(Side.DELTA)
    assert supporting == ("F3", "F5", "F6")
    assert opposing == ("F1", "F2", "F4")


def test_flat_not_forced_blocked_on_unmatched_pro(flat_cb):
    result = rm_forces(flat_cb, query_edprime(), Side.PI)
    assert not result.forced
    assert result.trace.attempts[0].blocked_on == "F1"


def test_flat_forced_when_query_is_at_least_as_good():
    cb = FlatFactorCaseBase(
        ("A", "B"),
        frozenset({"A"}),
        frozenset({"B"}),
        (FlatCase("G", {"A": True, "B": True}, Side.PI),),
    )
    # query has the same pro factor and lacks the con factor: a fortiori
    result = rm_forces(cb, {"A": True}, Side.PI)
    assert result.forced
    assert result.trace.precedent == "G"


def test_flat_blocked_by_new_con_factor():
    cb = FlatFactorCaseBase(
        ("A", "B"),
        frozenset({"A"}),
        frozenset({"B"}),
        (FlatCase("G", {"A": True, "B": False}, Side.PI),),
    )
    result = rm_forces(cb, {"A": True, "B": True}, Side.PI)
    assert not result.forced
    assert result.trace.attempts[0].blocked_on == "B"


def test_flat_vacuous_subgoals_are_annotated(flat_cb):
    result = rm_forces(flat_cb, query_e(), Side.PI)
    notes = {
        (sg.goal, sg.note)
        for attempt in result.trace.attempts
        for sg in attempt.subgoals
        if sg.vacuous
    }
    assert ("F2", "precedent does not satisfy it") in notes
    assert ("F3", "query does not satisfy it") in notes


def test_flat_no_precedent_for_side(flat_cb):
    result = rm_forces(flat_cb, query_e(), Side.DELTA)
    assert not result.forced
    assert result.trace.failure_witness == "no precedent decided for delta"


def test_flat_every_precedent_blocked(flat_cb):
    result = rm_forces(flat_cb, {}, Side.PI)
    assert not result.forced
    assert result.trace.failure_witness == "every precedent is blocked"
    assert len(result.trace.attempts) == 2


def test_flat_fast_mode_matches_traced(flat_cb):
    import itertools

    for bits in itertools.product((False, True), repeat=len(flat_cb.factors)):
        situation = dict(zip(flat_cb.factors, bits))
        for side in (Side.PI, Side.DELTA):
            fast = rm_forces(flat_cb, situation, side, with_trace=False)
            traced = rm_forces(flat_cb, situation, side, with_trace=True)
            assert fast.forced == traced.forced


def test_flat_query_may_be_partial(flat_cb):
    # absence means the factor is simply not present in the new situation
    assert rm_forces(flat_cb, {}, Side.PI).forced is False
    assert rm_forces(flat_cb, {"F1": True}, Side.PI).forced


def test_flat_rejects_unknown_query_factor(flat_cb):
    with pytest.raises(ValueError, match="unknown factors"):
        rm_forces(flat_cb, {"Zed": True}, Side.PI)
