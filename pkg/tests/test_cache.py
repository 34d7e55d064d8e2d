from __future__ import annotations

import json

import pytest

from weakquantum.algebra import TypeSequence
from weakquantum.cache import (
    CACHE_VERSION,
    CacheCorruptError,
    CacheVersionError,
    cache_load,
    cache_path,
    cache_store,
    get_system,
)
from weakquantum.cartan import cartan_type, validate


def _rules_text(sys_):
    return [(r.lhs, tuple((w, c.to_string()) for w, c in r.rhs)) for r in sys_.rule_list()]


@pytest.mark.parametrize("name,d", [("A1", "1|1"), ("A2", "10|01"), ("B2", "00|11")])
def test_round_trip_is_exact(tmp_path, name, d):
    c = cartan_type(name)
    dseq = TypeSequence.parse(d)
    s = get_system(c, dseq, 8, cache_dir=tmp_path)
    back = cache_load(tmp_path, c, dseq, 8)
    assert back.rules == s.rules
    assert _rules_text(back) == _rules_text(s)
    assert (back.bound, back.confluent_up_to, back.globally_confluent) == (
        s.bound, s.confluent_up_to, s.globally_confluent)
    # storing the loaded copy reproduces the file byte for byte
    before = cache_path(tmp_path, c, dseq, 8).read_bytes()
    cache_store(back, tmp_path)
    assert cache_path(tmp_path, c, dseq, 8).read_bytes() == before


def test_wrong_bound_is_a_miss(tmp_path):
    c, d = cartan_type("A1"), TypeSequence.parse("1|1")
    get_system(c, d, 8, cache_dir=tmp_path)
    assert cache_load(tmp_path, c, d, 7) is None
    assert cache_load(tmp_path, c, d, 8, "J1") is None


def test_version_mismatch_is_explicit(tmp_path):
    c, d = cartan_type("A1"), TypeSequence.parse("1|1")
    get_system(c, d, 8, cache_dir=tmp_path)
    path = cache_path(tmp_path, c, d, 8)
    data = json.loads(path.read_text())
    data["version"] = CACHE_VERSION + 1
    path.write_text(json.dumps(data))
    with pytest.raises(CacheVersionError):
        cache_load(tmp_path, c, d, 8)


def test_corrupt_file(tmp_path):
    c, d = cartan_type("A1"), TypeSequence.parse("1|1")
    get_system(c, d, 8, cache_dir=tmp_path)
    path = cache_path(tmp_path, c, d, 8)
    path.write_text(path.read_text()[:50])
    with pytest.raises(CacheCorruptError):
        cache_load(tmp_path, c, d, 8)
    data = {"version": CACHE_VERSION, "rules": []}
    path.write_text(json.dumps(data))
    with pytest.raises(CacheCorruptError):
        cache_load(tmp_path, c, d, 8)


def test_matrix_systems_and_quotients(tmp_path):
    c = validate([[2, -1], [-1, 2]])
    d = TypeSequence.parse("11|11")
    q1 = get_system(c, d, 6, "J1", cache_dir=tmp_path)
    assert cache_load(tmp_path, c, d, 6, "J1").rules == q1.rules
    assert cache_load(tmp_path, c, d, 6, "base") is not None
    assert not list(tmp_path.glob("*.tmp"))
