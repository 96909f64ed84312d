"""Flat and hierarchical dimension forcing over graded fact situations."""

from __future__ import annotations

import itertools

import pytest

from precedent.dimension_models import (
    BoundClaim,
    BoundDirection,
    DimCase,
    DimCaseBase,
    FlatDimCase,
    FlatDimCaseBase,
    dhrm_bound,
    dhrm_forces_outcome,
    drm_forces,
)
from precedent.hierarchy import Dimension, DimensionHierarchy, Side, ValueOrder
from precedent.trace import Rule, trace_depth

from conftest import dim_case_m, dim_query_e, dim_query_eprime, family_dim_hierarchy

LOWER, UPPER = BoundDirection.LOWER, BoundDirection.UPPER


def test_bound_claim_str():
    assert str(BoundClaim("R", 3, LOWER)) == "3<=R"
    assert str(BoundClaim("R", 3, UPPER)) == "R<=3"


def test_dim_casebase_rejects_incomplete_case(dim_hierarchy):
    with pytest.raises(ValueError, match="not complete"):
        DimCaseBase(dim_hierarchy, (DimCase("C", {"F1": 1}),))


def test_dim_casebase_rejects_bad_value(dim_hierarchy):
    values = dict(dim_case_m().values, F1=9)
    with pytest.raises(ValueError, match="not one of its values"):
        DimCaseBase(dim_hierarchy, (DimCase("C", values),))


def test_dim_casebase_rejects_unknown_dimension(dim_hierarchy):
    values = dict(dim_case_m().values, Zed=1)
    with pytest.raises(ValueError, match="unknown dimensions"):
        DimCaseBase(dim_hierarchy, (DimCase("C", values),))


def test_dim_casebase_rejects_duplicate_names(dim_hierarchy):
    with pytest.raises(ValueError, match="duplicate case name"):
        DimCaseBase(dim_hierarchy, (dim_case_m(), DimCase("M", dim_case_m().values)))


# ---------------------------------------------------------------------------
# hierarchical bounds


def test_direct_lower_bound(dim_cb_m):
    # E(Q) = 3, so 2 <= E(Q) holds without touching the precedent
    result = dhrm_bound(dim_cb_m, dim_query_e(), BoundClaim("Q", 2, LOWER))
    assert result.forced
    assert result.trace.rule is Rule.DIRECT


def test_direct_upper_bound(dim_cb_m):
    result = dhrm_bound(dim_cb_m, dim_query_e(), BoundClaim("Q", 3, UPPER))
    assert result.forced
    assert result.trace.rule is Rule.DIRECT
    assert not dhrm_bound(dim_cb_m, dim_query_e(), BoundClaim("Q", 2, UPPER)).forced


def test_descending_order_inverts_direct_bounds(dim_cb_m):
    # F6 is ordered descending, so 0 <= 1 fails while 1 <= 0 holds
    assert not dhrm_bound(dim_cb_m, dim_query_e(), BoundClaim("F6", 0, LOWER)).forced
    assert dhrm_bound(dim_cb_m, dim_query_e(), BoundClaim("F6", 1, LOWER)).forced


def test_recursive_lower_bound_blocked_inside_r(dim_cb_m):
    result = dhrm_bound(dim_cb_m, dim_query_e(), BoundClaim("R", 3, LOWER))
    assert not result.forced
    (attempt,) = result.trace.attempts
    assert attempt.case == "M"
    assert attempt.blocked_on == "0<=F6"
    failing = [sg for sg in attempt.subgoals if not sg.satisfied]
    assert [sg.goal for sg in failing] == ["0<=F6"]


def test_recursive_bound_through_undefined_dimension(dim_cb_m):
    # E undefined on R: the claim is settled through M's subordinate values
    eprime = dim_query_eprime()
    result = dhrm_bound(dim_cb_m, eprime, BoundClaim("R", 3, LOWER))
    assert result.forced
    assert result.trace.precedent == "M"


def test_eligibility_prunes_precedents(dim_cb_m):
    # M(R) = 3, so M cannot witness the stronger claim 4 <= R
    result = dhrm_bound(dim_cb_m, dim_query_eprime(), BoundClaim("R", 4, LOWER))
    assert not result.forced
    assert result.trace.attempts == ()
    assert "no precedent satisfies" in result.trace.failure_witness


def test_basic_dimension_admits_only_direct_bounds(dim_cb_m):
    result = dhrm_bound(dim_cb_m, {}, BoundClaim("F1", 1, LOWER))
    assert not result.forced
    assert "base-level" in result.trace.failure_witness


def test_unknown_dimension_faults(dim_cb_m):
    with pytest.raises(ValueError, match="unknown dimension"):
        dhrm_bound(dim_cb_m, {}, BoundClaim("Zed", 1, LOWER))


def test_claim_value_outside_value_set_faults(dim_cb_m):
    with pytest.raises(ValueError, match="not one of"):
        dhrm_bound(dim_cb_m, {}, BoundClaim("F1", 7, LOWER))


def test_query_value_outside_value_set_faults(dim_cb_m):
    with pytest.raises(ValueError, match="not one of its values"):
        dhrm_bound(dim_cb_m, {"F1": 9}, BoundClaim("F1", 1, LOWER))


def test_upper_bounds_mirror_lower_bounds():
    # a mirrored case base forces the mirrored claim through the same shape
    h = family_dim_hierarchy()
    cb = DimCaseBase(h, (dim_case_m(),))
    # lower side: 2 <= Q settled directly; upper side needs the precedent
    low = dhrm_bound(cb, {"P": 1}, BoundClaim("Q", 2, LOWER))
    up = dhrm_bound(cb, {"P": 3}, BoundClaim("Q", 2, UPPER))
    assert not low.forced  # M(P)=2: needs 2 <= E(P) but E(P)=1
    assert not up.forced  # needs E(P) <= 2 but E(P)=3
    assert dhrm_bound(cb, {"P": 2, "F3": 0}, BoundClaim("Q", 2, LOWER)).forced
    assert dhrm_bound(cb, {"P": 2, "F3": 0}, BoundClaim("Q", 2, UPPER)).forced


def test_dhrm_fast_matches_traced(dim_cb_m, dim_hierarchy):
    for situation in (dim_query_e(), dim_query_eprime(), {}, {"R": 5}):
        for dim in dim_hierarchy.dimensions:
            for value in dim.order.values:
                for direction in (LOWER, UPPER):
                    claim = BoundClaim(dim.id, value, direction)
                    fast = dhrm_bound(dim_cb_m, situation, claim, with_trace=False)
                    traced = dhrm_bound(dim_cb_m, situation, claim, with_trace=True)
                    assert fast.forced == traced.forced, claim


def test_trace_depth_bounded(dim_cb_m, dim_hierarchy):
    result = dhrm_bound(dim_cb_m, dim_query_eprime(), BoundClaim("IceCream", 1, LOWER))
    assert result.forced
    assert trace_depth(result.trace) <= dim_hierarchy.depth


# ---------------------------------------------------------------------------
# outcome wrapper


def test_outcome_wrapper_builds_the_two_claims(dim_cb_m):
    assert not dhrm_forces_outcome(dim_cb_m, dim_query_e(), Side.PI).forced
    assert dhrm_forces_outcome(dim_cb_m, dim_query_eprime(), Side.PI).forced
    pi_trace = dhrm_forces_outcome(dim_cb_m, dim_query_eprime(), Side.PI).trace
    assert pi_trace.goal == "1<=IceCream"
    delta_trace = dhrm_forces_outcome(dim_cb_m, dim_query_e(), Side.DELTA).trace
    assert delta_trace.goal == "IceCream<=0"


def test_outcome_wrapper_requires_binary_top():
    h = DimensionHierarchy(
        (
            Dimension("A", ValueOrder((0, 1), numeric="ascending")),
            Dimension("OUT", ValueOrder((0, 1, 2), numeric="ascending")),
        ),
        (("A", "OUT"),),
    )
    cb = DimCaseBase(h, ())
    with pytest.raises(ValueError, match="values {0, 1}"):
        dhrm_forces_outcome(cb, {}, Side.PI)


def test_outcome_wrapper_rejects_descending_top():
    h = DimensionHierarchy(
        (
            Dimension("A", ValueOrder((0, 1), numeric="ascending")),
            Dimension("OUT", ValueOrder((0, 1), numeric="descending")),
        ),
        (("A", "OUT"),),
    )
    cb = DimCaseBase(h, ())
    with pytest.raises(ValueError, match="ordered 0 <= 1"):
        dhrm_forces_outcome(cb, {}, Side.PI)


# ---------------------------------------------------------------------------
# flat dimension forcing


def _flat_dim_cb() -> FlatDimCaseBase:
    dims = (
        Dimension("A", ValueOrder((0, 1, 2), numeric="ascending")),
        Dimension("B", ValueOrder((0, 1, 2), numeric="descending")),
    )
    cases = (
        FlatDimCase("G", {"A": 1, "B": 1}, Side.PI),
        FlatDimCase("H", {"A": 1, "B": 1}, Side.DELTA),
    )
    return FlatDimCaseBase(dims, cases)


def test_drm_requires_complete_query():
    cb = _flat_dim_cb()
    with pytest.raises(ValueError, match="not complete"):
        drm_forces(cb, {"A": 1}, Side.PI)


def test_drm_pi_needs_precedent_at_or_below():
    cb = _flat_dim_cb()
    assert drm_forces(cb, {"A": 2, "B": 0}, Side.PI).forced  # better on both
    assert drm_forces(cb, {"A": 1, "B": 1}, Side.PI).forced  # equal
    assert not drm_forces(cb, {"A": 0, "B": 1}, Side.PI).forced  # worse on A
    assert not drm_forces(cb, {"A": 1, "B": 2}, Side.PI).forced  # worse on B (descending)


def test_drm_delta_is_the_mirror():
    cb = _flat_dim_cb()
    assert drm_forces(cb, {"A": 0, "B": 2}, Side.DELTA).forced
    assert not drm_forces(cb, {"A": 2, "B": 1}, Side.DELTA).forced


def test_drm_trace_names_the_blocking_dimension():
    cb = _flat_dim_cb()
    result = drm_forces(cb, {"A": 0, "B": 0}, Side.PI)
    assert not result.forced
    assert result.trace.attempts[0].blocked_on == "A"
    notes = [sg.note for sg in result.trace.attempts[0].subgoals]
    assert notes == ["1 <= 0", "1 <= 0"]


def test_drm_fast_matches_traced():
    cb = _flat_dim_cb()
    values = (0, 1, 2)
    for a, b in itertools.product(values, values):
        for side in (Side.PI, Side.DELTA):
            situation = {"A": a, "B": b}
            fast = drm_forces(cb, situation, side, with_trace=False)
            traced = drm_forces(cb, situation, side, with_trace=True)
            assert fast.forced == traced.forced


def test_flat_dim_casebase_rejects_incomplete_case():
    dims = (Dimension("A", ValueOrder((0, 1), numeric="ascending")),)
    with pytest.raises(ValueError, match="not complete"):
        FlatDimCaseBase(dims, (FlatDimCase("G", {}, Side.PI),))
