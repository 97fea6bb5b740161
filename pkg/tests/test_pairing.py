"""Tests for hom-pairing homology, Euler characteristics, and determinants."""

import pytest

from bnc.algebra import F2, PrimeField, Rationals
from bnc.builtins import make
from bnc.cabling import cable
from bnc.pairing import (
    LaurentPoly,
    determinant,
    euler_char_B0,
    homology_over_kG,
    is_cap_trivial,
    mor_complex,
    pairing_panel,
)
from bnc.reduction import reduce, to_curve_like

Q = Rationals()
F3 = PrimeField(3)


@pytest.mark.parametrize("F", [Q, F3, F2])
def test_trefoil_pairing_homology(F):
    H = homology_over_kG(mor_complex(make("q_tangle", F), make("trefoil_31_seifert", F)))
    assert H.free == ((-6, -3), (8, 5))
    assert H.torsion == ((-2, -1, 1), (2, 1, 2), (4, 3, 1))
    assert H.module_type() == (2, (1, 1, 2))
    assert H.format() == "k[G]^2 + k[G]/(G) + k[G]/(G^2) + k[G]/(G)"
    assert H.to_json() == {
        "free": [[-6, -3], [8, 5]],
        "torsion": [[-2, -1, 1], [2, 1, 2], [4, 3, 1]],
    }


def test_cap_pairing_with_unknot_is_free_of_rank_one():
    H = homology_over_kG(mor_complex(make("q_infty", Q), make("q_tangle", Q)))
    assert H.module_type() == (1, ())


def test_mor_complex_rejects_mixed_fields():
    with pytest.raises(ValueError, match="one field"):
        mor_complex(make("q_tangle", Q), make("q_tangle", F2))


def test_rational_closure_determinants():
    for n in range(-3, 4):
        T = make("q_tangle", Q, n=n)
        for m in range(-3, 4):
            assert determinant(T, m) == abs(n - m)
        assert determinant(T, "inf") == 1


def test_trefoil_determinants():
    T = make("trefoil_31_seifert", Q)
    assert determinant(T, 0) == 0
    assert determinant(T, 1) == 1
    assert determinant(T, "inf") == 1


def test_trefoil_family_determinants():
    assert determinant(make("trefoil_family", Q, n=0), 0) == 4
    assert determinant(make("trefoil_family", Q, n=0), 1) == 3
    assert determinant(make("trefoil_family", Q, n=0), "inf") == 1
    assert determinant(make("trefoil_family", Q, n=-2), 0) == 2
    assert determinant(make("trefoil_family", Q, n=2), 0) == 6


def test_cabled_unknot_determinants_follow_the_shifted_slope():
    C = cable(make("q_tangle", F2))
    for c in (-4, 0, 2, 4):
        assert determinant(C, c) == abs(c - 2)


def test_determinant_is_reduction_invariant():
    raw = cable(make("q_tangle", F2, n=2))
    red, _ = reduce(raw)
    for c in (-2, 0, 3):
        assert determinant(raw, c) == determinant(red, c)


def test_determinant_input_checks():
    T = make("q_tangle", Q)
    with pytest.raises(ValueError, match="closure"):
        determinant(T, "around")
    bad = TypeD(
        Q,
        [Generator("x", DOT, 0, 0), Generator("y", DOT, -2, 3)],
        [("x", "y", element(Q, DOT, DOT, [("D", 0, 1)]))],
    )
    with pytest.raises(ValueError, match="valid complex"):
        determinant(bad, 0)


def test_euler_characteristic_of_trefoil_pairing():
    chi = euler_char_B0(make("q_tangle", Q), make("trefoil_31_seifert", Q))
    assert chi == LaurentPoly({-6: -1, -4: 1, 4: -1, 8: -1})
    assert chi.to_json() == {"-3": -1, "-2": 1, "2": -1, "4": -1}
    assert chi.format() == "-t^-3 + t^-2 - t^2 - t^4"


def test_laurent_poly_evaluation_at_minus_one():
    assert LaurentPoly({0: 3, 2: 1}).eval_minus_one() == (2, 0)
    assert LaurentPoly({1: 2, 3: 1}).eval_minus_one() == (0, 1)
    assert not LaurentPoly({0: 0})
    assert LaurentPoly({}).format() == "0"


def test_pairing_panel_is_reduction_invariant():
    raw = cable(make("q_tangle", F2, n=2))
    red, _ = reduce(raw)
    cur, report, _ = to_curve_like(red)
    assert report.is_curve_like
    assert pairing_panel(raw) == pairing_panel(red) == pairing_panel(cur)
    assert set(pairing_panel(red)) == {"q0", "q1", "qinf"}


def test_is_cap_trivial():
    assert is_cap_trivial(make("q_tangle", Q))
    assert is_cap_trivial(make("trefoil_31_seifert", Q))
    assert is_cap_trivial(make("trefoil_family", Q, n=1))
    assert not is_cap_trivial(make("q_infty", Q))
    assert not is_cap_trivial(make("compact_C", Q))
