"""Degree-truncated noncommutative completion and normal forms.

Relations are oriented by the degree-lexicographic order on words (length
first, then left-lexicographic by the alphabet ranking of
:mod:`weakquantum.algebra`). Completion resolves every overlap ambiguity whose
overlap word has length at most the bound ``L``; below that length the
reduction system is confluent (Bergman's diamond lemma applied inside the
subspace spanned by words of length <= L, which reductions never leave).

If no overlap had to be skipped, the system is confluent in every degree and
``globally_confluent`` is set.
"""

from __future__ import annotations

import heapq
import itertools
import sys
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Element, Presentation, alphabet, multidegree
from .coeff import _QQ, ONE, RationalFunctionQ, eval_at

__all__ = [
    "DegreeOverflow",
    "MonomialOrder",
    "DEGLEX",
    "RewriteRule",
    "RewriteSystem",
    "orient",
    "complete",
    "build_system",
    "normalize",
    "graded_counts",
    "counts_by_degree",
    "irreducible_words",
    "quotient_J1",
    "quotient_J0",
    "dimension_oracle",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_BOUND = 8


class DegreeOverflow(ArithmeticError):
    """A word is longer than the degree up to which the system is confluent."""


@dataclass(frozen=True)
class MonomialOrder:
    """Length first, then left-lexicographic by letter code."""

    ident: str = "deglex:F<(Kb_i<K_i)<J<E"

    @staticmethod
    def key(w: Sequence[int]):
        return (len(w), tuple(w))

    def less(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.key(u) < self.key(v)


DEGLEX = MonomialOrder()


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: tuple  # ((word, coeff), ...)

    def as_element(self, n: int) -> Element:
        """``lhs - rhs`` as an element of the free algebra."""
        terms = {self.lhs: ONE}
        for w, c in self.rhs:
            terms[w] = -c
        return Element(n, terms)


def _add_into(acc: dict, w, c):
    s = acc.get(w)
    if s is None:
        acc[w] = c
    else:
        s = s + c
        if s:
            acc[w] = s
        else:
            del acc[w]


def _mul(a: RationalFunctionQ, b: RationalFunctionQ) -> RationalFunctionQ:
    if a.is_one():
        return b
    if b.is_one():
        return a
    return a * b


class RewriteSystem:
    """An oriented rule set ``lhs -> rhs`` over the alphabet of rank ``n``.

    Mutated only by :func:`complete`; afterwards treat it as read-only.
    """

    def __init__(self, presentation: Presentation, order: MonomialOrder = DEGLEX,
                 variant: str = "base"):
        self.presentation = presentation
        self.order = order
        self.variant = variant
        self.n = presentation.n
        self.rules: dict[tuple, tuple] = {}
        self.bound = 0
        self.confluent_up_to = 0
        self.globally_confluent = False
        self._lens: tuple[int, ...] = ()
        self._cache: dict[tuple, dict] = {}

    # -- rule bookkeeping ---------------------------------------------------
    def _reset_index(self):
        self._lens = tuple(sorted({len(k) for k in self.rules}))
        self._cache = {}

    def rule_list(self) -> list[RewriteRule]:
        return [RewriteRule(l, r) for l, r in sorted(self.rules.items(), key=lambda t: DEGLEX.key(t[0]))]

    @property
    def max_lhs_length(self) -> int:
        return max(self._lens, default=0)

    @property
    def effective_bound(self) -> float:
        return float("inf") if self.globally_confluent else self.confluent_up_to

    # -- reduction ----------------------------------------------------------
    def find_factor(self, w: tuple):
        """Leftmost rule lhs occurring in ``w`` as ``(position, lhs)`` or None."""
        rules = self.rules
        lens = self._lens
        m = len(w)
        for i in range(m):
            for L in lens:
                if i + L > m:
                    break
                key = w[i:i + L]
                if key in rules:
                    return i, key
        return None

    def is_irreducible(self, w: tuple) -> bool:
        return self.find_factor(w) is None

    def nf_word(self, w: tuple) -> dict:
        """Normal form of a single word as ``{word: coeff}`` (do not mutate)."""
        cache = self._cache
        res = cache.get(w)
        if res is not None:
            return res
        hit = self.find_factor(w)
        if hit is None:
            res = {w: ONE}
        else:
            i, lhs = hit
            head, tail = w[:i], w[i + len(lhs):]
            res = {}
            for u, c in self.rules[lhs]:
                sub = self.nf_word(head + u + tail)
                for x, d in sub.items():
                    _add_into(res, x, _mul(c, d))
        cache[w] = res
        return res

    def nf_terms(self, terms: Mapping[tuple, RationalFunctionQ], check: bool = True) -> dict:
        if check:
            self.check_length(max((len(w) for w in terms), default=0))
        acc: dict = {}
        for w, c in terms.items():
            for x, d in self.nf_word(w).items():
                _add_into(acc, x, _mul(c, d))
        return acc

    def check_length(self, m: int):
        if not self.globally_confluent and m > self.confluent_up_to:
            raise DegreeOverflow(
                f"word length {m} exceeds the confluence bound {self.confluent_up_to}"
            )

    def normalize(self, x: Element) -> Element:
        if x.n != self.n:
            raise ValueError("rank mismatch between element and rewrite system")
        return Element._raw(self.n, self.nf_terms(x.terms))

    def mul(self, *factors: Element) -> Element:
        """Normal form of a product, normalizing after each multiplication."""
        out = Element.one(self.n)
        for f in factors:
            out = self.normalize(out * f)
        return out

    def __repr__(self):
        return (f"RewriteSystem({self.presentation.cartan.key}, d={self.presentation.dseq}, "
                f"variant={self.variant}, rules={len(self.rules)}, bound={self.bound}, "
                f"global={self.globally_confluent})")


def normalize(sys_: RewriteSystem, x: Element) -> Element:
    return sys_.normalize(x)


# ---------------------------------------------------------------------------
# orientation and completion
# ---------------------------------------------------------------------------

def _orient_terms(terms: Mapping[tuple, RationalFunctionQ]) -> tuple[tuple, tuple]:
    lead = max(terms, key=DEGLEX.key)
    inv = terms[lead].inverse()
    rhs = tuple(
        sorted(((w, -(c * inv)) for w, c in terms.items() if w != lead),
               key=lambda t: DEGLEX.key(t[0]), reverse=True)
    )
    return lead, rhs


def orient(presentation: Presentation, order: MonomialOrder = DEGLEX,
           extra: Iterable[Element] = (), variant: str = "base") -> RewriteSystem:
    """Turn each relation into a rule with its order-maximal word as lhs.

    Relations sharing a lhs are kept as the first one; the rest are reduced
    by :func:`complete`. Raises ValueError on a zero relation.
    """
    sys_ = RewriteSystem(presentation, order, variant)
    sys_._pending = []
    for r in list(presentation.relations) + list(extra):
        if r.is_zero():
            raise ValueError("degenerate input: a relation is zero")
        lhs, rhs = _orient_terms(r.terms)
        if lhs in sys_.rules:
            sys_._pending.append(dict(r.terms))
        else:
            sys_.rules[lhs] = rhs
    sys_._reset_index()
    return sys_


def _overlaps(a: tuple, b: tuple):
    """Overlap words ``a + b[k:]`` where a proper suffix of ``a`` equals a
    proper prefix of ``b``; yields ``(word, position_of_b)``."""
    la, lb = len(a), len(b)
    for k in range(1, min(la, lb)):
        if a[la - k:] == b[:k]:
            yield a + b[k:], la - k


def complete(sys_: RewriteSystem, L: int = DEFAULT_BOUND, log=None,
             certify: bool = True) -> RewriteSystem:
    """Resolve all overlap ambiguities of length <= L, adding rules as needed.

    Pairs are processed by overlap length, then lexicographically, so the
    result is deterministic.
    """
    rules = sys_.rules
    heap: list = []
    counter = itertools.count()
    truncated = False

    def push_pairs(new: tuple):
        nonlocal truncated
        for other in list(rules):
            for a, b in ((new, other), (other, new)) if other != new else ((new, new),):
                for w, pos in _overlaps(a, b):
                    if len(w) > L:
                        truncated = True
                        continue
                    heapq.heappush(heap, (len(w), w, next(counter), a, b, pos))

    def insert(terms: dict):
        red = sys_.nf_terms(terms, check=False)
        if not red:
            return
        lhs, rhs = _orient_terms(red)
        # rules whose lhs contains the new lhs become pending relations
        displaced = []
        for old in list(rules):
            if len(old) >= len(lhs) and _contains(old, lhs):
                displaced.append(old)
        rules[lhs] = rhs
        for old in displaced:
            orhs = rules.pop(old)
            t = {old: ONE}
            for w, c in orhs:
                t[w] = -c
            pending.append(t)
        sys_._reset_index()
        push_pairs(lhs)

    pending: list = list(getattr(sys_, "_pending", []))
    sys_._pending = []
    # initial interreduction: rules whose lhs contains another lhs
    for lhs in sorted(rules, key=DEGLEX.key, reverse=True):
        if lhs not in rules:
            continue
        rest = dict(rules)
        del rest[lhs]
        if any(_contains(lhs, o) for o in rest):
            rhs = rules.pop(lhs)
            t = {lhs: ONE}
            for w, c in rhs:
                t[w] = -c
            pending.append(t)
    sys_._reset_index()
    for lhs in sorted(rules, key=DEGLEX.key):
        push_pairs(lhs)

    def drain_pending():
        while pending:
            insert(pending.pop(0))

    drain_pending()
    while heap:
        length, w, _, a, b, pos = heapq.heappop(heap)
        if a not in rules or b not in rules:
            continue
        ra = sys_.rules[a]
        rb = sys_.rules[b]
        tail = w[len(a):]
        head = w[:pos]
        s: dict = {}
        for u, c in ra:
            _add_into(s, u + tail, c)
        for u, c in rb:
            _add_into(s, head + u, -c)
        if s:
            insert(s)
            drain_pending()
        if log is not None and next(counter) % 5000 == 0:
            log(f"pairs left {len(heap)}, rules {len(rules)}")

    # final interreduction of right-hand sides
    for lhs in sorted(rules, key=DEGLEX.key):
        rhs_terms = {w: c for w, c in rules[lhs]}
        red = sys_.nf_terms(rhs_terms, check=False)
        rules[lhs] = tuple(sorted(red.items(), key=lambda t: DEGLEX.key(t[0]), reverse=True))
        sys_._cache = {}
    sys_._reset_index()
    sys_.bound = L
    sys_.confluent_up_to = L
    sys_.globally_confluent = not truncated or (certify and _certify(sys_, L))
    return sys_


def _certify(sys_: RewriteSystem, L: int) -> bool:
    """Check the overlaps longer than L without adding rules.

    If every one of them reduces to zero, all ambiguities are resolvable and
    the system is confluent in every degree.
    """
    rules = sys_.rules
    pairs = []
    for a in rules:
        for b in rules:
            for w, pos in _overlaps(a, b):
                if len(w) > L:
                    pairs.append((len(w), w, a, b, pos))
    pairs.sort()
    for _, w, a, b, pos in pairs:
        s: dict = {}
        for u, c in rules[a]:
            _add_into(s, u + w[len(a):], c)
        for u, c in rules[b]:
            _add_into(s, w[:pos] + u, -c)
        if s and sys_.nf_terms(s, check=False):
            return False
    return True


def _contains(big: tuple, small: tuple) -> bool:
    ls = len(small)
    return any(big[i:i + ls] == small for i in range(len(big) - ls + 1))


def build_system(presentation: Presentation, L: int = DEFAULT_BOUND) -> RewriteSystem:
    """Orient and complete the presentation to bound L."""
    return complete(orient(presentation), L)


def _derived(sys_: RewriteSystem, extra: Element, variant: str) -> RewriteSystem:
    seeded = Presentation(
        sys_.presentation.cartan,
        sys_.presentation.dseq,
        tuple(r.as_element(sys_.n) for r in sys_.rule_list()),
        tuple(f"rule{k}" for k in range(len(sys_.rules))),
    )
    out = complete(orient(seeded, sys_.order, extra=[extra], variant=variant), sys_.bound)
    out.presentation = sys_.presentation
    return out


def quotient_J1(sys_: RewriteSystem) -> RewriteSystem:
    """The quotient by the ideal generated by ``J - 1``, completed to the same bound."""
    n = sys_.n
    J = Element.gen(n, "J")
    return _derived(sys_, J - Element.one(n), "J1")


def quotient_J0(sys_: RewriteSystem) -> RewriteSystem:
    """The quotient by ``<J>``, isomorphic to the ideal ``w (1 - J)``."""
    return _derived(sys_, Element.gen(sys_.n, "J"), "J0")


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def irreducible_words(sys_: RewriteSystem, maxlen: int, letters: Sequence[int] | None = None):
    """Yield all irreducible words of length <= maxlen (depth first)."""
    if maxlen > sys_.effective_bound:
        raise DegreeOverflow(f"maxlen {maxlen} exceeds bound {sys_.confluent_up_to}")
    letters = range(alphabet(sys_.n).size) if letters is None else list(letters)
    rules = sys_.rules
    lens = sys_._lens

    def ok(w):
        m = len(w)
        for L in lens:
            if L > m:
                break
            if w[m - L:] in rules:
                return False
        return True

    stack = [()]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < maxlen:
            for x in reversed(letters):
                v = w + (x,)
                if ok(v):
                    stack.append(v)


def graded_counts(sys_: RewriteSystem, maxlen: int, letters: Sequence[int] | None = None
                  ) -> dict[tuple[tuple[int, ...], int], int]:
    """Count irreducible words by (multidegree, length)."""
    counts: dict = defaultdict(int)
    for w in irreducible_words(sys_, maxlen, letters):
        counts[(multidegree(sys_.n, w), len(w))] += 1
    return dict(counts)


def counts_by_degree(counts: Mapping[tuple[tuple[int, ...], int], int]) -> dict[tuple[int, ...], int]:
    """Collapse (multidegree, length) counts to multidegree counts."""
    out: dict = defaultdict(int)
    for (deg, _), c in counts.items():
        out[deg] += c
    return dict(out)


# ---------------------------------------------------------------------------
# independent linear-algebra oracle
# ---------------------------------------------------------------------------

def _words_upto(size: int, m: int):
    for k in range(m + 1):
        yield from itertools.product(range(size), repeat=k)


def dimension_oracle(p: Presentation, maxlen: int, qval, extra: Iterable[Element] = (),
                     slack: int = 0) -> dict[tuple[int, ...], int]:
    """Dimension of span{words of length <= maxlen} modulo
    span{u r v : r relation, |u r v| <= maxlen}, by multidegree.

    Coefficients are evaluated at ``q = qval`` and ranks computed by exact
    sparse elimination over Q. Does not use the rewriting engine.
    """
    n = p.n
    size = alphabet(n).size
    qval = Fraction(qval)
    rels = []
    for r in list(p.relations) + list(extra):
        ev = {w: _QQ(eval_at(c, qval)) for w, c in r.terms.items()}
        ev = {w: c for w, c in ev.items() if c}
        if ev:
            rels.append((max(len(w) for w in ev), multidegree(n, next(iter(ev))), ev))

    word_count: dict = defaultdict(int)
    deg_cache = {}
    for w in _words_upto(size, maxlen):
        word_count[multidegree(n, w)] += 1

    pivots: dict = defaultdict(dict)  # degree -> {lead word: row}
    for length, rdeg, ev in rels:
        room = maxlen + slack - length
        for k in range(room + 1):
            for uv in itertools.product(range(size), repeat=k):
                uvdeg = deg_cache.get(uv)
                if uvdeg is None:
                    uvdeg = deg_cache[uv] = multidegree(n, uv)
                deg = tuple(x + y for x, y in zip(rdeg, uvdeg))
                piv = pivots[deg]
                for split in range(k + 1):
                    u, v = uv[:split], uv[split:]
                    row = {u + w + v: c for w, c in ev.items()}
                    _eliminate(piv, row)
    return {deg: cnt - sum(1 for w in pivots.get(deg, ()) if len(w) <= maxlen)
            for deg, cnt in word_count.items()}


def _eliminate(pivots: dict, row: dict):
    key = DEGLEX.key
    while row:
        lead = max(row, key=key)
        prow = pivots.get(lead)
        if prow is None:
            c = row[lead]
            pivots[lead] = {w: x / c for w, x in row.items()}
            return
        c = row[lead]
        for w, x in prow.items():
            s = row.get(w, 0) - c * x
            if s:
                row[w] = s
            else:
                row.pop(w, None)
