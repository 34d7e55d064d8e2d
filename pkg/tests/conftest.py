from __future__ import annotations

from functools import lru_cache

import pytest

from weakquantum.algebra import TypeSequence, build_relations
from weakquantum.cartan import cartan_type
from weakquantum.hopf import WeakHopf
from weakquantum.rewrite import build_system, quotient_J0, quotient_J1


@lru_cache(maxsize=None)
def system(name: str, dseq: str, bound: int = 8):
    c = cartan_type(name)
    return build_system(build_relations(c, TypeSequence.parse(dseq, c.n)), bound)


@lru_cache(maxsize=None)
def quotient(name: str, dseq: str, bound: int = 8):
    return quotient_J1(system(name, dseq, bound))


@lru_cache(maxsize=None)
def ideal(name: str, dseq: str, bound: int = 8):
    return quotient_J0(system(name, dseq, bound))


@lru_cache(maxsize=None)
def hopf(name: str, dseq: str, bound: int = 8):
    return WeakHopf(system(name, dseq, bound))


def all_dseqs(n: int) -> list[str]:
    return [str(d) for d in TypeSequence.enumerate(n)]


@pytest.fixture
def a1():
    return system("A1", "1|1")


@pytest.fixture
def a2():
    return system("A2", "11|11")
