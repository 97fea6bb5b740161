"""Acceptance gate: the fourteen numbered criteria, one test function each.

Each test runs its criterion over every field the criterion is posed over
(see bnc.selftest for the field panels) and prints a single pass line; a
failing criterion raises with the computed truth in the assertion message.
Criteria 7 and 12 are pinned to stated values that the computation provably
refutes; they are expected to fail and are intentionally not marked xfail.
"""

from bnc.selftest import CRITERIA, FIELDS


def _run(number):
    crit = CRITERIA[number - 1]
    for field_name in crit.fields:
        crit.func(FIELDS[field_name])
    print(
        "criterion %d (%s): PASS over %s"
        % (number, crit.name, ", ".join(crit.fields))
    )


def test_cable_of_single_dot_reduces_to_three_generator_arc():
    _run(1)


def test_cable_of_single_circle_matches_six_generator_complex():
    _run(2)


def test_zigzag_cables_split_into_loops_and_arc():
    _run(3)


def test_homogeneous_chain_yields_compact_loops():
    _run(4)


def test_framed_trefoil_family_cables():
    _run(5)


def test_dotted_loop_removal_preserves_cable():
    _run(6)


def test_trefoil_pairing_homology_module():
    _run(7)


def test_cap_triviality_detection():
    _run(8)


def test_trefoil_determinants():
    _run(9)


def test_cable_shifts_vanishing_slope_uniformly():
    _run(10)


def test_cable_outputs_land_in_geography():
    _run(11)


def test_cable_iterates_become_rational_arcs():
    _run(12)


def test_property_suite():
    _run(13)


def test_iterated_cabling_rank_growth():
    _run(14)
