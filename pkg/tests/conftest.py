"""Shared builders for the family ice-cream dispute used across the suite.

The scenario: a child asks whether the family's past decisions force the
outcome "we get ice cream" (the top factor) in a new situation.  Getting
ice cream is supported by having been good (Q) and by the outing going
well (R); Q rests on finishing dinner (P, itself resting on F1 and F2)
and is undercut by a tantrum (F3); R is supported by sunshine (F4) and
undercut by rain (F5) or a late hour (F6).
"""

from __future__ import annotations

import os

import pytest

from precedent.dimension_models import DimCase, DimCaseBase
from precedent.factor_models import Case, FactorCaseBase, FlatCase, FlatFactorCaseBase
from precedent.hierarchy import (
    Dimension,
    DimensionHierarchy,
    Edge,
    FactorHierarchy,
    Polarity,
    Side,
    ValueOrder,
)

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")

# Filled by test_acceptance.py; echoed after the run so the verdict per
# criterion survives output capture.
ACCEPTANCE_RESULTS: list[tuple[int, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance")
        for n, verdict in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(f"ACCEPTANCE {n}: {verdict}")


def fixture_path(name: str) -> str:
    return os.path.normpath(os.path.join(FIXTURES, name))


def family_hierarchy() -> FactorHierarchy:
    factors = ("F1", "F2", "F3", "F4", "F5", "F6", "P", "Q", "R", "IceCream")
    edges = (
        Edge("Q", "IceCream", Polarity.PRO),
        Edge("R", "IceCream", Polarity.PRO),
        Edge("P", "Q", Polarity.PRO),
        Edge("F3", "Q", Polarity.CON),
        Edge("F1", "P", Polarity.PRO),
        Edge("F2", "P", Polarity.PRO),
        Edge("F4", "R", Polarity.PRO),
        Edge("F5", "R", Polarity.CON),
        Edge("F6", "R", Polarity.CON),
    )
    return FactorHierarchy(factors, edges)


def case_m() -> Case:
    return Case(
        "M",
        {
            "F1": True, "F2": False, "F3": False, "F4": False, "F5": True,
            "F6": False, "P": True, "Q": True, "R": False, "IceCream": True,
        },
    )


def case_mprime() -> Case:
    facts = dict(case_m().facts, F4=True, R=True)
    return Case("Mprime", facts)


def case_mdprime() -> Case:
    return Case(
        "Mdprime",
        {
            "F1": True, "F2": False, "F3": False, "F4": False, "F5": False,
            "F6": False, "P": True, "Q": True, "R": False, "IceCream": True,
        },
    )


def query_e() -> dict[str, bool]:
    return {"F1": False, "F2": True, "F3": False, "F4": False, "F5": False, "F6": True}


def query_e_with_p() -> dict[str, bool]:
    return dict(query_e(), P=True)


def query_eprime() -> dict[str, bool]:
    return dict(query_e(), F4=True)


def query_edprime() -> dict[str, bool]:
    return {"F2": True}


def query_edprime_with_p() -> dict[str, bool]:
    return {"F2": True, "P": True}


def flat_family_casebase() -> FlatFactorCaseBase:
    factors = ("F1", "F2", "F3", "F4", "F5", "F6")
    return FlatFactorCaseBase(
        factors,
        frozenset({"F1", "F2", "F4"}),
        frozenset({"F3", "F5", "F6"}),
        (
            FlatCase("M", {"F1": True, "F2": False, "F3": False, "F4": False, "F5": True, "F6": False}, Side.PI),
            FlatCase("Mdprime", {"F1": True, "F2": False, "F3": False, "F4": False, "F5": False, "F6": False}, Side.PI),
        ),
    )


def _asc(*values) -> ValueOrder:
    return ValueOrder(tuple(values), numeric="ascending")


def _desc(*values) -> ValueOrder:
    return ValueOrder(tuple(values), numeric="descending")


def family_dim_hierarchy() -> DimensionHierarchy:
    dims = (
        Dimension("F1", _asc(0, 1)),
        Dimension("F2", _asc(0, 1)),
        Dimension("F3", _desc(0, 1)),
        Dimension("F4", _asc(0, 1)),
        Dimension("F5", _desc(0, 1)),
        Dimension("F6", _desc(0, 1)),
        Dimension("P", _asc(0, 1, 2, 3, 4, 5)),
        Dimension("Q", _asc(0, 1, 2, 3, 4, 5)),
        Dimension("R", _asc(0, 1, 2, 3, 4, 5)),
        Dimension("IceCream", _asc(0, 1)),
    )
    edges = (
        ("Q", "IceCream"), ("R", "IceCream"), ("P", "Q"), ("F3", "Q"),
        ("F1", "P"), ("F2", "P"), ("F4", "R"), ("F5", "R"), ("F6", "R"),
    )
    return DimensionHierarchy(dims, edges)


def dim_case_m() -> DimCase:
    return DimCase(
        "M",
        {
            "F1": 1, "F2": 0, "F3": 0, "F4": 0, "F5": 1, "F6": 0,
            "P": 2, "Q": 2, "R": 3, "IceCream": 1,
        },
    )


def dim_query_e() -> dict[str, int]:
    return {"F1": 0, "F2": 1, "F3": 0, "F4": 0, "F5": 0, "F6": 1, "P": 3, "Q": 3}


def dim_query_eprime() -> dict[str, int]:
    return dict(dim_query_e(), F5=1, F6=0)


@pytest.fixture
def hierarchy() -> FactorHierarchy:
    return family_hierarchy()


@pytest.fixture
def cb_m(hierarchy) -> FactorCaseBase:
    return FactorCaseBase(hierarchy, (case_m(),))


@pytest.fixture
def dim_hierarchy() -> DimensionHierarchy:
    return family_dim_hierarchy()


@pytest.fixture
def dim_cb_m(dim_hierarchy) -> DimCaseBase:
    return DimCaseBase(dim_hierarchy, (dim_case_m(),))


@pytest.fixture
def flat_cb() -> FlatFactorCaseBase:
    return flat_family_casebase()
