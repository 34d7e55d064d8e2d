from __future__ import annotations

import random

import pytest

from conftest import system
from weakquantum.algebra import Element, alphabet
from weakquantum.coeff import Q, q_power
from weakquantum.parsing import IndexOutOfRank, ParseError, parse, parse_coefficient


def test_basic_parse():
    x = parse("E1*F1 - F1*E1", 1)
    A = alphabet(1)
    assert x.terms.keys() == {(A.E(1), A.F(1)), (A.F(1), A.E(1))}
    assert x.coefficient((A.F(1), A.E(1))) == -x.coefficient((A.E(1), A.F(1)))


def test_w5_right_side():
    x = parse("(q - q^-1)^-1 * (K1 - Kb1)", 1)
    c = (Q - q_power(-1)).inverse()
    assert x == Element.gen(1, "K", 1).scale(c) - Element.gen(1, "Kb", 1).scale(c)


def test_rationals_powers_and_signs():
    assert parse("-3/4*E1^2", 1) == Element.word(1, (alphabet(1).E(1),) * 2, -3) .scale(
        parse_coefficient("1/4"))
    assert parse_coefficient("(q + q^-1)/(q - q^-1)") == (Q + q_power(-1)) / (Q - q_power(-1))
    assert parse("J^0", 2) == Element.one(2)


@pytest.mark.parametrize("text,pos", [
    ("E1 +", 4), ("E1 * * F1", 5), ("(E1", 3), ("E1 $ F1", 3), ("E1^x", 3),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text, 2)
    assert info.value.pos == pos


def test_index_errors():
    with pytest.raises(IndexOutOfRank) as info:
        parse("E3", 2)
    assert info.value.pos == 0
    with pytest.raises(IndexOutOfRank):
        parse("F1 + K0", 2)


def test_inverting_a_generator_is_rejected():
    with pytest.raises(ParseError):
        parse("E1^-1", 1)
    with pytest.raises(ParseError):
        parse("1/(q - q)", 1)
    with pytest.raises(ParseError):
        parse_coefficient("q*E1")


def test_print_parse_round_trip_on_normal_forms():
    rng = random.Random(11)
    for name, d in (("A1", "1|1"), ("A2", "10|01")):
        s = system(name, d)
        n = s.n
        A = alphabet(n)
        for _ in range(60):
            x = Element.zero(n)
            for _ in range(rng.randint(1, 3)):
                w = tuple(rng.randrange(A.size) for _ in range(rng.randint(0, 3)))
                x = x + Element.word(n, w, q_power(rng.randint(-2, 2)) * rng.choice([1, -2, 3]))
            y = s.normalize(x)
            assert s.normalize(parse(str(y), n)) == y
