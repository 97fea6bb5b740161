"""Tests for the arc-algebra coefficient layer."""

import random

import pytest

from bnc.algebra import (
    CIRCLE,
    DOT,
    CompositionError,
    F2,
    InhomogeneousError,
    PrimeField,
    Rationals,
    UndefinedDegreeError,
    element,
    element_from_json,
    format_element,
    mono,
    multiply,
    parse_field_spec,
    path_shape,
    quantum_degree,
    scalar_ratio,
    terms_to_json,
    unit,
    zero,
)

Q = Rationals()
F3 = PrimeField(3)
FIELDS = [Q, F3, F2]


@pytest.mark.parametrize("F", FIELDS)
def test_saddle_kills_dot_both_ways(F):
    s_up = mono(F, DOT, CIRCLE, "S")
    s_down = mono(F, CIRCLE, DOT, "S")
    d_dot = mono(F, DOT, DOT, "D")
    d_circle = mono(F, CIRCLE, CIRCLE, "D")
    assert multiply(d_circle, s_up) == zero(F, DOT, CIRCLE)
    assert multiply(s_up, d_dot) == zero(F, DOT, CIRCLE)
    assert multiply(d_dot, s_down) == zero(F, CIRCLE, DOT)
    assert multiply(s_down, d_circle) == zero(F, CIRCLE, DOT)


@pytest.mark.parametrize("F", FIELDS)
def test_saddle_square_and_dot_square(F):
    s_up = mono(F, DOT, CIRCLE, "S")
    s_down = mono(F, CIRCLE, DOT, "S")
    d_dot = mono(F, DOT, DOT, "D")
    assert multiply(s_down, s_up) == element(F, DOT, DOT, [("Id", 1, 1), ("D", 0, 1)])
    assert multiply(d_dot, d_dot) == element(F, DOT, DOT, [("D", 1, -1)])


@pytest.mark.parametrize("F", FIELDS)
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_dot_powers(F, k):
    d = mono(F, DOT, DOT, "D")
    power = unit(F, DOT)
    for _ in range(k):
        power = multiply(d, power)
    assert power == element(F, DOT, DOT, [("D", k - 1, (-1) ** (k - 1))])


@pytest.mark.parametrize("F", FIELDS)
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_odd_saddle_powers(F, n):
    s_up = mono(F, DOT, CIRCLE, "S")
    s_down = mono(F, CIRCLE, DOT, "S")
    power = unit(F, DOT)
    for i in range(2 * n + 1):
        power = multiply(s_up if i % 2 == 0 else s_down, power)
    assert power == element(F, DOT, CIRCLE, [("S", n, 1)])


@pytest.mark.parametrize("F", FIELDS)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_even_saddle_powers(F, k):
    s_up = mono(F, DOT, CIRCLE, "S")
    s_down = mono(F, CIRCLE, DOT, "S")
    power = unit(F, DOT)
    for i in range(2 * k):
        power = multiply(s_up if i % 2 == 0 else s_down, power)
    assert power == element(F, DOT, DOT, [("Id", k, 1), ("D", k - 1, 1)])


def test_quantum_degrees():
    assert quantum_degree(unit(Q, DOT)) == 0
    assert quantum_degree(mono(Q, DOT, DOT, "D")) == -2
    assert quantum_degree(mono(Q, DOT, CIRCLE, "S")) == -1
    assert quantum_degree(mono(Q, DOT, CIRCLE, "S", gpow=1)) == -3
    assert quantum_degree(element(Q, DOT, DOT, [("Id", 1, 1), ("D", 0, 1)])) == -2


def test_quantum_degree_of_zero_is_undefined():
    with pytest.raises(UndefinedDegreeError):
        quantum_degree(zero(Q, DOT, DOT))


def test_quantum_degree_of_mixed_element_raises():
    with pytest.raises(InhomogeneousError):
        quantum_degree(element(Q, DOT, DOT, [("Id", 0, 1), ("D", 0, 1)]))


def test_element_normalizes_and_drops_zero_terms():
    a = element(Q, DOT, DOT, [("D", 0, 2), ("D", 0, -2), ("Id", 1, 1)])
    assert a.terms == (("Id", 1, 1),)
    assert not element(F3, DOT, DOT, [("D", 0, 3)])


def test_element_enforces_kind_idempotent_compatibility():
    with pytest.raises(CompositionError):
        element(Q, DOT, DOT, [("S", 0, 1)])
    with pytest.raises(CompositionError):
        element(Q, DOT, CIRCLE, [("D", 0, 1)])
    with pytest.raises(CompositionError):
        element(Q, DOT, CIRCLE, [("Id", 0, 1)])
    with pytest.raises(CompositionError):
        element(Q, "square", DOT, [("Id", 0, 1)])


def test_multiply_requires_composable_idempotents():
    s_up = mono(Q, DOT, CIRCLE, "S")
    with pytest.raises(CompositionError):
        multiply(s_up, s_up)
    with pytest.raises(CompositionError):
        multiply(mono(Q, DOT, DOT, "D"), s_up)


def _random_element(rng, F, src, tgt):
    kinds = ("S",) if src != tgt else ("Id", "D")
    terms = [
        (rng.choice(kinds), rng.randrange(3), F.from_int(rng.randint(-6, 6)))
        for _ in range(rng.randint(1, 3))
    ]
    return element(F, src, tgt, terms)


@pytest.mark.parametrize("F", FIELDS)
def test_multiplication_is_associative(F):
    rng = random.Random(11)
    for _ in range(10_000):
        i, j, k, l = (rng.choice((DOT, CIRCLE)) for _ in range(4))
        a = _random_element(rng, F, k, l)
        b = _random_element(rng, F, j, k)
        c = _random_element(rng, F, i, j)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@pytest.mark.parametrize("F", FIELDS)
def test_multiplication_distributes_over_addition(F):
    rng = random.Random(12)
    for _ in range(500):
        i, j, k = (rng.choice((DOT, CIRCLE)) for _ in range(3))
        a = _random_element(rng, F, j, k)
        b = _random_element(rng, F, j, k)
        c = _random_element(rng, F, i, j)
        d = _random_element(rng, F, k, i)
        assert multiply(a + b, c) == multiply(a, c) + multiply(b, c)
        assert multiply(d, a + b) == multiply(d, a) + multiply(d, b)


def test_units_are_two_sided_identities():
    a = element(Q, DOT, CIRCLE, [("S", 1, 3)])
    assert multiply(unit(Q, CIRCLE), a) == a
    assert multiply(a, unit(Q, DOT)) == a


def test_path_shape_classification():
    assert path_shape(mono(Q, DOT, CIRCLE, "S", gpow=2, coeff=5)) == ("S", 2, 5)
    assert path_shape(mono(Q, DOT, DOT, "D", gpow=1, coeff=-1)) == ("D", 1, -1)
    assert path_shape(element(Q, DOT, DOT, [("Id", 3, 7), ("D", 2, 7)])) == ("SS", 2, 7)
    assert path_shape(mono(Q, DOT, DOT, "Id", gpow=2)) is None
    assert path_shape(element(Q, DOT, DOT, [("Id", 3, 7), ("D", 2, 5)])) is None
    assert path_shape(zero(Q, DOT, DOT)) is None


def test_scalar_ratio():
    a = element(Q, DOT, DOT, [("Id", 1, 2), ("D", 0, 2)])
    b = element(Q, DOT, DOT, [("Id", 1, 3), ("D", 0, 3)])
    assert scalar_ratio(a, b) == pytest.approx(2 / 3)
    assert scalar_ratio(a, element(Q, DOT, DOT, [("Id", 1, 2), ("D", 0, 3)])) is None
    assert scalar_ratio(a, mono(Q, DOT, DOT, "D")) is None
    assert scalar_ratio(zero(Q, DOT, DOT), zero(Q, DOT, DOT)) == 1


def test_prime_field_rejects_non_prime_order():
    with pytest.raises(ValueError):
        PrimeField(1)
    with pytest.raises(ValueError):
        PrimeField(4)


def test_prime_field_coerce_rejects_bools_and_non_ints():
    with pytest.raises(TypeError):
        F2.coerce(True)
    with pytest.raises(TypeError):
        F2.coerce("1")


def test_field_parse():
    assert PrimeField(5).parse("1/2") == 3
    assert PrimeField(5).parse(" -7 ") == 3
    assert Q.parse("2/3") == pytest.approx(2 / 3)


def test_parse_field_spec():
    assert parse_field_spec("q") == Rationals()
    assert parse_field_spec("fp:7") == PrimeField(7)
    assert parse_field_spec("fp:2") == F2
    with pytest.raises(ValueError):
        parse_field_spec("fp:1")
    with pytest.raises(ValueError):
        parse_field_spec("galois")


@pytest.mark.parametrize("F", FIELDS)
def test_terms_json_round_trip(F):
    rng = random.Random(13)
    for _ in range(200):
        src, tgt = rng.choice(((DOT, DOT), (DOT, CIRCLE), (CIRCLE, CIRCLE)))
        a = _random_element(rng, F, src, tgt)
        assert element_from_json(F, src, tgt, terms_to_json(a)) == a


def test_format_element():
    assert format_element(zero(Q, DOT, DOT)) == "0"
    assert format_element(unit(Q, DOT)) == "1"
    assert format_element(mono(Q, DOT, CIRCLE, "S", gpow=1)) == "G*S"
    assert format_element(element(Q, DOT, DOT, [("Id", 1, 1), ("D", 0, 1)])) == "G + D"
    assert format_element(element(Q, DOT, DOT, [("D", 2, -3)])) == "-3*G^2*D"
    assert format_element(element(F2, DOT, DOT, [("D", 1, 1), ("Id", 0, 1)])) == "1 + G*D"
