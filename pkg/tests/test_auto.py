from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import all_dseqs, hopf
from weakquantum.algebra import Element, alphabet
from weakquantum.auto import (
    DiagonalParams,
    DiagramSymmetry,
    ExtensionError,
    TypeSequenceMismatch,
    compose,
    diagram_automorphisms,
    extend_from_wq,
    group_law_check,
    parse_params,
    parse_perm,
    phi_a,
    semidirect_check,
    sigma_map,
    verify_weak_hopf_automorphism,
)
from weakquantum.cartan import cartan_type
from weakquantum.hopf import EndoMap
from weakquantum.parsing import parse


def P(n, text):
    return parse(text, n)


def test_params_and_perms():
    assert parse_params("2,-1/3").a == (Fraction(2), Fraction(-1, 3))
    with pytest.raises(ValueError):
        parse_params("1,0")
    assert parse_perm("2,1").perm == (2, 1)
    assert parse_perm("21").perm == (2, 1)
    with pytest.raises(ValueError):
        parse_perm("1,1")


def test_phi_a_examples():
    h = hopf("A1", "1|1")
    ident = phi_a(DiagonalParams((1,)))
    for c in range(h.A.size):
        x = Element.word(1, (c,))
        assert ident.apply(h.sys, x) == x
    m = phi_a(DiagonalParams((2,)))
    assert m.apply(h.sys, P(1, "E1*F1")) == h.normalize(P(1, "E1*F1"))
    assert m.apply(h.sys, P(1, "K1*Kb1")) == P(1, "J")


def test_diagram_automorphisms():
    perms = lambda name: [s.perm for s in diagram_automorphisms(cartan_type(name))]  # noqa: E731
    assert perms("A2") == [(1, 2), (2, 1)]
    assert perms("B2") == [(1, 2)]
    assert perms("A3") == [(1, 2, 3), (3, 2, 1)]
    assert perms("G2") == [(1, 2)]


def test_sigma_map_respects_type_sequence():
    c = cartan_type("A2")
    swap = DiagramSymmetry((2, 1))
    h = hopf("A2", "11|11")
    assert verify_weak_hopf_automorphism(h, sigma_map(swap, c, h.dseq), 3).passed
    with pytest.raises(TypeSequenceMismatch):
        sigma_map(swap, c, hopf("A2", "10|11").dseq)
    ident = sigma_map(DiagramSymmetry.identity(2), c, hopf("A2", "10|11").dseq)
    assert ident.apply(h.sys, P(2, "E1*F2")) == h.normalize(P(2, "E1*F2"))


@pytest.mark.parametrize("d", all_dseqs(2))
def test_phi_a_is_weak_hopf_automorphism(d):
    h = hopf("A2", d)
    rep = verify_weak_hopf_automorphism(h, phi_a(DiagonalParams((2, Fraction(-1, 2)))), 3)
    assert rep.passed, rep.to_text()


def test_negative_controls():
    h = hopf("A2", "11|11")
    A = alphabet(2)
    images = {c: Element.word(2, (c,)) for c in range(A.size)}
    bad = EndoMap(2, {**images, A.E(1): P(2, "F1")}, name="E1->F1")
    rep = verify_weak_hopf_automorphism(h, bad, 2)
    assert not rep.passed
    assert any(r.check == "automorphism-relations" and r.counterexample for r in rep.failures())
    moved_j = EndoMap(2, {**images, A.J: P(2, "1")}, name="J->1")
    rep = verify_weak_hopf_automorphism(h, moved_j, 2)
    assert not rep.passed
    assert any(r.check == "fixes J" for r in rep.failures())


def test_semidirect_identity_and_control():
    h = hopf("A2", "11|11")
    swap = DiagramSymmetry((2, 1))
    a = DiagonalParams((2, 3))
    assert semidirect_check(h, swap, a).passed
    assert semidirect_check(h, DiagramSymmetry.identity(2), a).passed
    rep = semidirect_check(h, swap, a, permute=False)
    assert not rep.passed and rep.failures()[0].counterexample


def test_group_law():
    h = hopf("A2", "10|01")
    assert group_law_check(h, DiagonalParams((2, 3)), DiagonalParams((Fraction(1, 2), -5))).passed


def test_extension_from_j_part():
    h = hopf("A1", "1|1")
    m = extend_from_wq(h, DiagramSymmetry.identity(1), DiagonalParams((5,)))
    x = h.sys.mul(P(1, "E1"), P(1, "1 - J"))
    assert m.apply(h.sys, x) == x.scale(5)
    # type-2 E: E1(1-J) = 0, nothing to extend
    h0 = hopf("A1", "0|1")
    assert not h0.sys.mul(P(1, "E1"), P(1, "1 - J"))
    extend_from_wq(h0, DiagramSymmetry.identity(1), DiagonalParams((5,)))
    ident = extend_from_wq(h, DiagramSymmetry.identity(1), DiagonalParams((1,)))
    assert ident.apply(h.sys, P(1, "E1*F1")) == h.normalize(P(1, "E1*F1"))


def test_extension_failure_propagates():
    h = hopf("A2", "11|11")
    swap = DiagramSymmetry((2, 1))
    m = compose(h, phi_a(DiagonalParams((2, 3))), sigma_map(swap, h.cartan, h.dseq))
    assert verify_weak_hopf_automorphism(h, m, 2).passed
    assert isinstance(ExtensionError("x", None), RuntimeError)
