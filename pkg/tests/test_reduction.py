"""Tests for arrow cancellation, traces, clean-ups, and the curve-like search."""

import pytest

from bnc.algebra import CIRCLE, DOT, Rationals, element
from bnc.builtins import make
from bnc.cabling import cable
from bnc.complexes import TypeD, Generator, connected_components, from_anchors, validate
from bnc.reduction import (
    CancellationError,
    CleanupError,
    ReductionTrace,
    cancel_one,
    cleanup,
    curve_like_report,
    is_reduced,
    reduce,
    replay,
    to_curve_like,
)

Q = Rationals()


def _zigzag_example():
    # cancelling the unit arrow x->y composes the flanking D arrows into G*D
    return from_anchors(
        Q,
        [("x", CIRCLE), ("y", CIRCLE), ("w", CIRCLE), ("b", CIRCLE)],
        [
            ("x", "y", [("Id", 0, 1)]),
            ("w", "y", [("D", 0, 1)]),
            ("x", "b", [("D", 0, 1)]),
        ],
        {"x": (0, 0)},
    )


def test_reduce_composes_flanking_arrows():
    red, trace = reduce(_zigzag_example())
    expected = from_anchors(
        Q, [("w", CIRCLE), ("b", CIRCLE)], [("w", "b", [("D", 1, 1)])], {"w": (-2, 0)}
    )
    assert red == expected
    assert trace.steps == [{"op": "cancel", "from": "x", "to": "y"}]


def test_reduce_contracts_acyclic_square():
    T = from_anchors(
        Q,
        [("a", DOT), ("x", DOT), ("w", DOT), ("y", DOT), ("z", DOT)],
        [
            ("a", "x", [("Id", 0, 1)]),
            ("a", "w", [("D", 0, 1)]),
            ("x", "y", [("D", 0, 1)]),
            ("w", "y", [("Id", 0, -1)]),
        ],
        {"a": (0, 0), "z": (5, 7)},
    )
    assert validate(T) is None
    red, _ = reduce(T)
    assert [(g.id, g.q, g.h) for g in red.generators()] == [("z", 5, 7)]
    assert red.arrows() == []


def test_reduce_is_idempotent():
    red, trace = reduce(cable(make("q_tangle", Q, n=2)))
    assert len(trace) > 0
    assert is_reduced(red)
    again, empty = reduce(red)
    assert again == red
    assert len(empty) == 0


def test_is_reduced_detects_unit_arrows():
    T = _zigzag_example()
    assert not is_reduced(T)
    assert is_reduced(make("trefoil_31_seifert", Q))


def test_trace_replays_and_round_trips():
    raw = cable(make("q_tangle", Q, n=2))
    red, trace = reduce(raw)
    loaded = ReductionTrace.from_json(trace.to_json())
    assert loaded.steps == trace.steps
    assert replay(raw, loaded) == red


def test_curve_like_search_trace_replays():
    red, _ = reduce(cable(make("q_tangle", Q, n=2)))
    final, report, trace = to_curve_like(red)
    assert report.is_curve_like
    assert replay(red, trace) == final


def test_cancel_one():
    T = _zigzag_example()
    red, _ = cancel_one(T, "x", "y")
    assert red == reduce(T)[0]


def test_cancel_one_rejects_non_unit_pivots():
    T = _zigzag_example()
    with pytest.raises(CancellationError, match="not a unit multiple"):
        cancel_one(T, "w", "y")
    with pytest.raises(CancellationError, match="no arrow"):
        cancel_one(T, "x", "w")


def test_cleanup_splits_reduced_circle_cable():
    six, _ = reduce(cable(make("q_infty", Q)))
    assert len(six) == 6
    x, y = sorted(g.id for g in six.generators() if g.idem == CIRCLE and (g.q, g.h) == (0, 0))
    (mid,) = [g.id for g in six.generators() if (g.q, g.h) == (2, 1)]
    gamma = dict((k, c) for k, g, c in six.entry(x, mid).terms)["D"]
    delta = dict((k, c) for k, g, c in six.entry(y, mid).terms)["D"]
    eta = {(x, y): element(Q, CIRCLE, CIRCLE, [("Id", 0, -gamma / delta)])}
    cleaned, trace = cleanup(six, eta)
    assert validate(cleaned) is None
    assert sorted(len(p) for p in connected_components(cleaned)) == [3, 3]
    assert replay(six, trace) == cleaned


def test_cleanup_rejects_non_square_zero_eta():
    gens = [Generator(gid, DOT, 0, 0) for gid in ("a", "b", "c")]
    T = TypeD(Q, gens, [])
    unit = element(Q, DOT, DOT, [("Id", 0, 1)])
    with pytest.raises(CleanupError, match="eta.eta != 0"):
        cleanup(T, {("a", "b"): unit, ("b", "c"): unit})


def test_cleanup_rejects_wrong_bidegree():
    unit = element(Q, DOT, DOT, [("Id", 0, 1)])
    T = TypeD(Q, [Generator("a", DOT, 0, 0), Generator("b", DOT, 0, 1)], [])
    with pytest.raises(CleanupError, match="not h-degree 0"):
        cleanup(T, {("a", "b"): unit})
    T = TypeD(Q, [Generator("a", DOT, 0, 0), Generator("b", DOT, 2, 0)], [])
    with pytest.raises(CleanupError, match="not q-degree 0"):
        cleanup(T, {("a", "b"): unit})
    T = TypeD(Q, [Generator("a", DOT, 0, 0), Generator("b", DOT, 0, 0)], [])
    circle_unit = element(Q, CIRCLE, CIRCLE, [("Id", 0, 1)])
    with pytest.raises(CleanupError, match="mismatched idempotents"):
        cleanup(T, {("a", "b"): circle_unit})


def test_to_curve_like_requires_reduced_input():
    with pytest.raises(ValueError, match="reduced"):
        to_curve_like(cable(make("q_tangle", Q, n=2)))


def test_to_curve_like_reports_budget_exhaustion():
    red, _ = reduce(cable(make("trefoil_31_seifert", Q)))
    final, report, _ = to_curve_like(red, budget=1)
    assert not report.is_curve_like
    assert validate(final) is None


def test_curve_like_report():
    raw = cable(make("q_tangle", Q, n=2))
    report = curve_like_report(raw)
    assert not report.is_curve_like
    assert report.bad_generators
    obj = report.to_json()
    assert set(obj) == {"is_curve_like", "bad_generators", "bad_labels"}

    clean = curve_like_report(make("compact_C", Q))
    assert clean.is_curve_like
    assert clean.bad_generators == [] and clean.bad_labels == []
