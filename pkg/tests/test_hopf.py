from __future__ import annotations

import random

import jsonschema
import pytest

from conftest import all_dseqs, hopf, quotient, system
from weakquantum.algebra import Element, alphabet, p_monomial
from weakquantum.coeff import ONE, ZERO, q_power
from weakquantum.hopf import (
    TensorElement,
    WeakHopf,
    all_words,
    coalgebra_axiom_checks,
    counit_generator_identities,
    enumerate_grouplikes,
    grouplike_checks,
    non_hopf_witness,
    p_monomials,
    relation_soundness,
    rho_check,
    split_checks,
    weak_antipode_checks,
)
from weakquantum.parsing import parse
from weakquantum.reports import REPORT_SCHEMA

T = TensorElement.pure


def P(n, text):
    return parse(text, n)


def test_delta_on_generators():
    h = hopf("A1", "1|0")
    assert h.delta(P(1, "E1")) == T(P(1, "1"), P(1, "E1")) + T(P(1, "E1"), P(1, "K1"))
    assert h.delta(P(1, "F1")) == T(P(1, "F1"), P(1, "J")) + T(P(1, "Kb1"), P(1, "F1"))
    h0 = hopf("A1", "0|1")
    assert h0.delta(P(1, "E1")) == T(P(1, "J"), P(1, "E1")) + T(P(1, "E1"), P(1, "K1"))
    assert h0.delta(P(1, "F1")) == T(P(1, "F1"), P(1, "1")) + T(P(1, "Kb1"), P(1, "F1"))
    h2 = hopf("A2", "11|11")
    ps = h2.normalize(p_monomial(2, (1, -2)))
    assert h2.delta(ps) == T(ps, ps)


def test_counit_and_antipode_values():
    h = hopf("A2", "11|11")
    assert h.counit(P(2, "E1*F1")) == ZERO
    assert h.counit(P(2, "K1*Kb2*J")) == ONE
    assert h.counit(P(2, "1")) == ONE
    assert h.antipode(P(2, "E1")) == h.normalize(P(2, "-E1*Kb1"))
    assert h.antipode(P(2, "K1*K2")) == h.normalize(P(2, "Kb1*Kb2"))
    assert h.antipode(P(2, "1")) == P(2, "1")
    assert h.antipode(P(2, "F2")) == h.normalize(P(2, "-K2*F2"))


def test_convolution_examples():
    h = hopf("A1", "1|1")
    J = P(1, "J")
    assert h.convolution([h.id, h.T], J) == J
    assert h.convolution([h.id, h.T], P(1, "K1")) == J
    assert not h.convolution([h.T, h.id], P(1, "F1"))


@pytest.mark.parametrize("d", all_dseqs(2))
def test_one_sided_antipode_facts(d):
    h = hopf("A2", d)
    n = 2
    J = P(n, "J")
    for i in (1, 2):
        for g in (f"K{i}", f"Kb{i}", f"E{i}"):
            x = P(n, g)
            assert h.convolution([h.id, h.T], x) == h.normalize(J.scale(h.counit(x)))
        F = P(n, f"F{i}")
        if h.dseq.f_type(i) == 2:
            assert not h.convolution([h.id, h.T], F)
        else:
            assert not h.convolution([h.T, h.id], F)
        E = P(n, f"E{i}")
        want = h.normalize((P(n, "1") - J) * E) if h.dseq.e_type(i) == 1 else Element.zero(n)
        assert h.convolution([h.T, h.id], E) == want


def test_check_weak_antipode_examples():
    for d in ("11|11", "01|10"):
        h = hopf("A2", d, 12)
        for text in ("E1", "K1*K2", "E1*F2*J"):
            assert h.check_weak_antipode(P(2, text)) == (True, True)


def test_non_hopf_witness():
    rep = non_hopf_witness(hopf("A2", "00|00"))
    assert rep.passed
    q1 = WeakHopf(quotient("A1", "1|1"))
    rep = non_hopf_witness(q1)
    assert not rep.passed
    assert any("J normalizes to 1" in (r.counterexample or "") for r in rep.failures())
    h = hopf("A1", "1|1")
    assert not h.sys.mul(P(1, "J"), P(1, "1 - J"))


def test_split_examples():
    h1, h0 = hopf("A1", "1|1"), hopf("A1", "0|0")
    E, J = P(1, "E1"), P(1, "J")
    assert h1.split(E) == (h1.normalize(E * J), h1.normalize(E - E * J))
    assert h1.split(E)[1]
    assert h0.split(E) == (E, Element.zero(1))
    assert h1.split(J) == (J, Element.zero(1))


def test_grouplikes():
    h = hopf("A2", "11|11")
    assert h.is_grouplike(p_monomial(2, (2, -1)))
    assert h.is_grouplike(P(2, "1"))
    assert not h.is_grouplike(P(2, "E1 + K1"))
    assert not h.is_grouplike(Element.zero(2))
    found = set(enumerate_grouplikes(h, 4))
    assert found == {w for w in p_monomials(2, 4)} | {()}


def _random(rng, n, maxlen):
    A = alphabet(n)
    x = Element.zero(n)
    for _ in range(rng.randint(1, 3)):
        w = tuple(rng.randrange(A.size) for _ in range(rng.randint(0, maxlen)))
        x = x + Element.word(n, w, q_power(rng.randint(-1, 1)) * rng.choice([1, -1, 3]))
    return x


@pytest.mark.parametrize("d", ["11|11", "10|01", "00|00"])
def test_delta_multiplicative_and_t_antimultiplicative(d):
    h = hopf("A2", d, 12)
    rng = random.Random(5)
    for _ in range(25):
        x, y = _random(rng, 2, 2), _random(rng, 2, 2)
        assert h.delta(x * y) == h.tensor_mul(h.delta(x), h.delta(y))
        assert h.antipode(x * y) == h.sys.mul(h.antipode(y), h.antipode(x))
        assert h.counit(x * y) == h.counit(x) * h.counit(y)


def test_reports_for_a1_all_d():
    for d in all_dseqs(1):
        h = hopf("A1", d)
        for rep in (relation_soundness(h.sys), coalgebra_axiom_checks(h, 3),
                    counit_generator_identities(h), weak_antipode_checks(h, 3),
                    rho_check(h), grouplike_checks(h, 4), non_hopf_witness(h)):
            assert rep.passed, rep.to_text()
            jsonschema.validate(rep.to_dict(), REPORT_SCHEMA)


def test_split_checks_random():
    h = hopf("A2", "10|11")
    rng = random.Random(9)
    samples = [(_random(rng, 2, 3), _random(rng, 2, 3)) for _ in range(20)]
    assert split_checks(h, samples).passed


def test_tensor_printing():
    h = hopf("A1", "1|1")
    assert str(h.delta(P(1, "E1"))) == "E1 ⊗ K1 + 1 ⊗ E1"
    assert str(TensorElement(1, 2)) == "0"
