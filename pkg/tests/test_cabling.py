"""Tests for the cabling operation and its operator table."""

import copy

import pytest

from bnc.algebra import CIRCLE, DOT, F2, PrimeField, Rationals
from bnc.builtins import make
from bnc.cabling import (
    OperatorTable,
    UnsupportedLabelError,
    cable,
    cable_object,
    check_elbow_splitting,
    iterate_cable,
    operator_table,
)
from bnc.complexes import Generator, from_anchors, shift, validate

Q = Rationals()
F3 = PrimeField(3)


def test_cable_object_sizes():
    assert len(cable_object(Q, Generator("x", DOT, 0, 0))) == 13
    assert len(cable_object(Q, Generator("u", CIRCLE, 0, 0))) == 12
    assert validate(cable_object(Q, Generator("x", DOT, 3, 1))) is None


@pytest.mark.parametrize("F", [Q, F3, F2])
def test_cable_of_builtins_validates(F):
    q2 = cable(make("q_tangle", F, n=2))
    assert len(q2) == 37
    assert validate(q2) is None
    tre = cable(make("trefoil_31_seifert", F))
    assert len(tre) == 135
    assert validate(tre) is None


def test_cable_commutes_with_shifts():
    T = make("q_tangle", Q, n=2)
    assert cable(shift(T, 1, 2)) == shift(cable(T), 1, 2)


def test_basic_table_rejects_higher_saddle_powers():
    T = from_anchors(Q, [("x", DOT), ("y", CIRCLE)], [("x", "y", [("S", 1, 1)])], {"x": (0, 0)})
    with pytest.raises(UnsupportedLabelError, match="extend_table"):
        cable(T)
    extended = cable(T, extend_table=True)
    assert len(extended) == 25
    assert validate(extended) is None


def test_basic_table_supports_dot_powers():
    T = from_anchors(Q, [("x", DOT), ("y", DOT)], [("x", "y", [("D", 1, -1)])], {"x": (0, 0)})
    assert validate(cable(T)) is None


def test_iterate_cable_reduces_between_rounds():
    final, ranks = iterate_cable(make("q_tangle", F2), 2)
    assert ranks == [3, 15]
    assert len(final) == 15
    assert validate(final) is None


def test_operator_table_is_cached_per_field():
    assert operator_table(F2) is operator_table(F2)
    assert operator_table(PrimeField(3)) is operator_table(F3)
    assert operator_table(F2) is not operator_table(F3)


def test_certification_catches_a_forged_table_entry():
    table = operator_table(F3)
    forged = OperatorTable.__new__(OperatorTable)
    forged.field = table.field
    forged.grids = table.grids
    forged._primitive = copy.deepcopy(table._primitive)
    forged._cache = {}
    entry = forged._primitive[("S", DOT)][(1, 1)][0][0]
    forged._primitive[("S", DOT)][(1, 1)][0][0] = -entry
    with pytest.raises(AssertionError, match=r"d\^2 != 0"):
        forged._certify()


def test_elbow_splitting_matches_on_a_lone_dot_arrow():
    T = from_anchors(Q, [("x", DOT), ("y", DOT)], [("x", "y", [("D", 0, 1)])], {"x": (0, 0)})
    report = check_elbow_splitting(T)
    assert report.verdict == "match"
    assert report.matched
    assert report.graded_equal and report.panels_equal


def test_elbow_splitting_matches_on_the_trefoil():
    report = check_elbow_splitting(make("trefoil_31_seifert", F2))
    assert report.verdict == "match"
    obj = report.to_json()
    assert obj["verdict"] == "match"
    assert obj["graded_counts_equal"] and obj["pairing_panels_equal"]


def test_elbow_splitting_reports_budget_exhaustion(monkeypatch):
    monkeypatch.setenv("BNC_STEP_BUDGET", "1")
    report = check_elbow_splitting(make("trefoil_31_seifert", F2))
    assert report.verdict == "indeterminate"
    assert not report.matched
    assert any("non-curve-like" in note for note in report.notes)
