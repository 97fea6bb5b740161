"""Tests for the bigraded type D structure layer."""

from collections import Counter

import pytest

from bnc.algebra import CIRCLE, DOT, F2, Rationals, element
from bnc.builtins import make
from bnc.complexes import (
    Generator,
    TypeD,
    connected_components,
    counts_by_idem,
    direct_sum,
    from_anchors,
    graded_counts,
    isomorphic_by_rescaling,
    isomorphic_up_to_shift,
    restrict_D_dot_zero,
    reversal,
    shift,
    validate,
)

Q = Rationals()


def _negate_arrow(T, src, tgt):
    arrows = []
    for i, j, lab in T.arrows():
        if (i, j) == (src, tgt):
            lab = -lab
        arrows.append((i, j, lab))
    return TypeD(T.field, T.generators(), arrows)


def test_from_anchors_propagates_gradings():
    T = from_anchors(
        Q,
        [("b", DOT), ("c1", CIRCLE), ("c2", CIRCLE)],
        [("b", "c1", [("S", 0, 1)]), ("c1", "c2", [("D", 0, 1)])],
        {"b": (-4, -2)},
    )
    assert [(g.id, g.q, g.h) for g in T.generators()] == [
        ("b", -4, -2),
        ("c1", -3, -1),
        ("c2", -1, 0),
    ]
    assert T == make("q_tangle", Q, n=2)


def test_from_anchors_needs_an_anchor_per_component():
    with pytest.raises(ValueError, match="no anchor reaches"):
        from_anchors(Q, [("x", DOT), ("y", DOT)], [], {"x": (0, 0)})


def test_from_anchors_rejects_conflicting_anchors():
    with pytest.raises(ValueError, match="conflict"):
        from_anchors(
            Q,
            [("x", DOT), ("y", CIRCLE)],
            [("x", "y", [("S", 0, 1)])],
            {"x": (0, 0), "y": (5, 1)},
        )


def test_typed_constructor_merges_parallel_arrows():
    gens = [Generator("x", DOT, 0, 0), Generator("y", DOT, -2, 1)]
    lab = element(Q, DOT, DOT, [("D", 0, 1)])
    T = TypeD(Q, gens, [("x", "y", lab), ("x", "y", lab)])
    assert T.entry("x", "y") == element(Q, DOT, DOT, [("D", 0, 2)])
    cancelled = TypeD(Q, gens, [("x", "y", lab), ("x", "y", -lab)])
    assert cancelled.entry("x", "y") is None
    assert cancelled.arrows() == []


def test_typed_constructor_rejects_bad_input():
    gens = [Generator("x", DOT, 0, 0), Generator("x", DOT, 1, 1)]
    with pytest.raises(ValueError, match="duplicate generator id"):
        TypeD(Q, gens, [])
    with pytest.raises(ValueError, match="unknown idempotent"):
        TypeD(Q, [Generator("x", "square", 0, 0)], [])
    with pytest.raises(ValueError, match="missing from generator set"):
        TypeD(Q, [Generator("x", DOT, 0, 0)], [("x", "y", element(Q, DOT, DOT, [("D", 0, 1)]))])


def test_validate_accepts_builtins():
    for name in ("q_tangle", "q_infty", "compact_C", "trefoil_31_seifert"):
        assert validate(make(name, Q)) is None


def test_validate_flags_idempotent_mismatch():
    T = TypeD(
        Q,
        [Generator("x", DOT, 0, 0), Generator("y", CIRCLE, -2, 1)],
        [("x", "y", element(Q, DOT, DOT, [("D", 0, 1)]))],
    )
    assert "label runs" in validate(T)


def test_validate_flags_bad_homological_step():
    T = TypeD(
        Q,
        [Generator("x", DOT, 0, 0), Generator("y", DOT, -2, 3)],
        [("x", "y", element(Q, DOT, DOT, [("D", 0, 1)]))],
    )
    assert "not a +1 step" in validate(T)


def test_validate_flags_quantum_mismatch():
    T = TypeD(
        Q,
        [Generator("x", DOT, 0, 0), Generator("y", DOT, -4, 1)],
        [("x", "y", element(Q, DOT, DOT, [("D", 0, 1)]))],
    )
    assert "quantum gradings" in validate(T)


def test_validate_flags_inhomogeneous_label():
    T = TypeD(
        Q,
        [Generator("x", DOT, 0, 0), Generator("y", DOT, 0, 1)],
        [("x", "y", element(Q, DOT, DOT, [("Id", 0, 1), ("D", 1, 1)]))],
    )
    assert "not quantum-homogeneous" in validate(T)


def test_validate_flags_nonzero_differential_square():
    T = from_anchors(
        Q,
        [("x", DOT), ("y", CIRCLE), ("z", DOT)],
        [("x", "y", [("S", 0, 1)]), ("y", "z", [("S", 0, 1)])],
        {"x": (0, 0)},
    )
    assert validate(T) == "d^2 != 0 from x to z: G + D"


def test_shift_moves_both_gradings():
    T = shift(make("q_tangle", Q, n=2), 3, -1)
    assert validate(T) is None
    assert graded_counts(T) == Counter(
        {(DOT, -5, 1): 1, (CIRCLE, -4, 2): 1, (CIRCLE, -2, 3): 1}
    )


def test_reversal_flips_framing_sign():
    rev = reversal(make("q_tangle", Q, n=2))
    assert validate(rev) is None
    assert isomorphic_by_rescaling(rev, make("q_tangle", Q, n=-2)) is not None
    assert reversal(rev) == make("q_tangle", Q, n=2)


def test_direct_sum_renames_colliding_ids():
    q0 = make("q_tangle", Q)
    both = direct_sum(q0, q0)
    assert sorted(both.gen_ids()) == ["b", "b'"]
    assert validate(both) is None
    assert len(connected_components(both)) == 2


def test_connected_components_of_a_tree():
    parts = connected_components(make("trefoil_31_seifert", Q))
    assert [len(p) for p in parts] == [11]


def test_restrict_d_dot_zero_splits_the_trefoil():
    parts = connected_components(restrict_D_dot_zero(make("trefoil_31_seifert", Q)))
    assert sorted(len(p) for p in parts) == [5, 6]


def test_restrict_d_dot_zero_keeps_circle_dots():
    C = restrict_D_dot_zero(make("compact_C", Q))
    kept = {(i, j) for i, j, _ in C.arrows()}
    assert ("a1", "a2") not in kept and ("b1", "b2") not in kept
    assert ("c11", "c12") in kept
    assert len(connected_components(C)) == 2


def test_restrict_d_dot_zero_needs_curve_like_input():
    from bnc.cabling import cable

    with pytest.raises(ValueError, match="curve-like"):
        restrict_D_dot_zero(cable(make("q_tangle", Q, n=2)))


def test_rescaling_absorbs_tree_sign_flips():
    T = make("q_tangle", Q, n=2)
    assert isomorphic_by_rescaling(T, _negate_arrow(T, "c1", "c2")) is not None


def test_rescaling_detects_loop_holonomy():
    C = make("compact_C", Q)
    flipped = _negate_arrow(C, "a1", "c11")
    assert validate(flipped) is None
    assert isomorphic_by_rescaling(C, flipped) is None
    assert isomorphic_by_rescaling(
        make("compact_C", F2), _negate_arrow(make("compact_C", F2), "a1", "c11")
    ) is not None


def test_rescaling_requires_exact_gradings():
    T = make("q_tangle", Q, n=2)
    assert isomorphic_by_rescaling(T, shift(T, 1, 0)) is None


def test_isomorphic_up_to_shift():
    T = make("trefoil_31_seifert", Q)
    assert isomorphic_up_to_shift(T, shift(T, 2, 3)) == (2, 3)
    assert isomorphic_up_to_shift(shift(T, 2, 3), T) == (-2, -3)
    assert isomorphic_up_to_shift(T, make("q_tangle", Q, n=2)) is None


def test_graded_counts_and_counts_by_idem():
    T = make("q_tangle", Q, n=2)
    assert graded_counts(T) == Counter(
        {(DOT, -4, -2): 1, (CIRCLE, -3, -1): 1, (CIRCLE, -1, 0): 1}
    )
    assert counts_by_idem(T) == Counter({CIRCLE: 2, DOT: 1})
