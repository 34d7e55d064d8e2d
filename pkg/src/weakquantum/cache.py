"""On-disk cache of completed rewrite systems (versioned JSON)."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .algebra import TypeSequence, alphabet, build_relations
from .cartan import CartanData
from .coeff import RationalFunctionQ
from .rewrite import DEGLEX, RewriteSystem, build_system, quotient_J0, quotient_J1

__all__ = [
    "CACHE_VERSION",
    "CacheError",
    "CacheVersionError",
    "CacheCorruptError",
    "cache_path",
    "system_to_dict",
    "system_from_dict",
    "cache_store",
    "cache_load",
    "get_system",
    "default_cache_dir",
]

CACHE_VERSION = 1


class CacheError(RuntimeError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheCorruptError(CacheError):
    pass


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "weakquantum"


def cache_path(cache_dir, cartan: CartanData, dseq: TypeSequence, bound: int,
               variant: str = "base", order=DEGLEX) -> Path:
    order_tag = order.ident.split(":")[0]
    name = f"{cartan.key}_{''.join(map(str, dseq.kappa))}-{''.join(map(str, dseq.kappabar))}"
    return Path(cache_dir) / f"{name}_{variant}_{order_tag}_L{bound}.json"


def system_to_dict(sys_: RewriteSystem) -> dict:
    p = sys_.presentation
    A = alphabet(sys_.n)
    return {
        "version": CACHE_VERSION,
        "cartan": {"key": p.cartan.key, "matrix": [list(r) for r in p.cartan.a]},
        "dseq": str(p.dseq),
        "order": sys_.order.ident,
        "bound": sys_.bound,
        "variant": sys_.variant,
        "confluent_up_to": sys_.confluent_up_to,
        "globally_confluent": sys_.globally_confluent,
        "rules": [
            {
                "lhs": [A.names[c] for c in r.lhs],
                "rhs": [{"word": [A.names[c] for c in w], "coeff": c.to_string()} for w, c in r.rhs],
            }
            for r in sys_.rule_list()
        ],
    }


def system_from_dict(data: dict, cartan: CartanData) -> RewriteSystem:
    """Rebuild a completed system; the presentation is regenerated from
    ``cartan`` and the stored type sequence."""
    if not isinstance(data, dict) or "version" not in data:
        raise CacheCorruptError("cache file has no version field")
    if data["version"] != CACHE_VERSION:
        raise CacheVersionError(
            f"cache version {data['version']!r} does not match expected {CACHE_VERSION}"
        )
    try:
        if [list(r) for r in cartan.a] != data["cartan"]["matrix"]:
            raise CacheCorruptError("cached Cartan matrix differs from the requested one")
        dseq = TypeSequence.parse(data["dseq"], cartan.n)
        p = build_relations(cartan, dseq)
        if data["order"] != DEGLEX.ident:
            raise CacheCorruptError(f"unknown monomial order {data['order']!r}")
        sys_ = RewriteSystem(p, DEGLEX, data["variant"])
        A = alphabet(cartan.n)
        word = lambda names: tuple(A.by_name(x) for x in names)  # noqa: E731
        for rule in data["rules"]:
            rhs = tuple((word(t["word"]), RationalFunctionQ.from_string(t["coeff"]))
                        for t in rule["rhs"])
            sys_.rules[word(rule["lhs"])] = rhs
        sys_.bound = int(data["bound"])
        sys_.confluent_up_to = int(data["confluent_up_to"])
        sys_.globally_confluent = bool(data["globally_confluent"])
    except CacheError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheCorruptError(f"malformed cache data: {exc}") from exc
    sys_._reset_index()
    return sys_


def cache_store(sys_: RewriteSystem, cache_dir) -> Path:
    """Write atomically: temporary file in the same directory, then rename."""
    p = sys_.presentation
    path = cache_path(cache_dir, p.cartan, p.dseq, sys_.bound, sys_.variant, sys_.order)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(system_to_dict(sys_), fh, ensure_ascii=False)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(cache_dir, cartan: CartanData, dseq: TypeSequence, bound: int,
               variant: str = "base") -> RewriteSystem | None:
    """The cached system, or None on a miss (no file for this exact key)."""
    path = cache_path(cache_dir, cartan, dseq, bound, variant)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CacheCorruptError(f"{path}: {exc}") from exc
    return system_from_dict(data, cartan)


def get_system(cartan: CartanData, dseq: TypeSequence, bound: int = 8,
               variant: str = "base", cache_dir=None) -> RewriteSystem:
    """Load from the cache or complete (and store) the requested system."""
    if cache_dir is not None:
        hit = cache_load(cache_dir, cartan, dseq, bound, variant)
        if hit is not None:
            return hit
    if variant == "base":
        sys_ = build_system(build_relations(cartan, dseq), bound)
    elif variant in ("J1", "J0"):
        base = get_system(cartan, dseq, bound, "base", cache_dir)
        sys_ = quotient_J1(base) if variant == "J1" else quotient_J0(base)
    else:
        raise ValueError(f"unknown system variant {variant!r}")
    if cache_dir is not None:
        cache_store(sys_, cache_dir)
    return sys_
