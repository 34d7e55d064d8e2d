"""Lusztig's braid symmetries, root vectors, PBW monomials and basis counts.

The symmetries act on the quotient by ``J - 1`` (a copy of U_q(g)), with the
conventions

    T_i(E_i) = -F_i K_i,   T_i(F_i) = -Kb_i E_i,   T_i(K_mu) = K_{s_i(mu)},
    T_i(E_j) = sum_k (-1)^k q_i^-k E_i^(r-k) E_j E_i^(k),
    T_i(F_j) = sum_k (-1)^k q_i^k  F_i^(k) F_j F_i^(r-k),      r = -a_ij,

where ``X^(k) = X^k / [k]_{q_i}!`` is a divided power.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .algebra import (
    Element,
    TypeSequence,
    alphabet,
    derived_identities,
    equivalence_classes,
    p_monomial,
)
from .cartan import (
    CartanData,
    kostant_count,
    longest_word,
    order_m,
    positive_roots,
    reduced_word_roots,
)
from .coeff import q_factorial, q_power
from .hopf import EndoMap
from .reports import Report
from .rewrite import (
    RewriteSystem,
    counts_by_degree,
    dimension_oracle,
    graded_counts,
    irreducible_words,
    quotient_J0,
    quotient_J1,
)

__all__ = [
    "lusztig_map",
    "lusztig_T",
    "braid_check",
    "homomorphism_check",
    "root_vector",
    "PBWMonomial",
    "enumerate_pbw",
    "basis_count_check",
    "pbw_independence_check",
    "lift_to_j_part",
]


def _k_mu(n: int, mu: Sequence[int]) -> Element:
    """``K_mu = prod_i K_i^{mu_i}`` with negative powers written as Kb."""
    A = alphabet(n)
    w: tuple = ()
    for i, m in enumerate(mu, start=1):
        w += (A.K(i),) * m if m >= 0 else (A.Kb(i),) * (-m)
    return Element.word(n, w)


def _divided(n: int, letter: int, k: int, d: int) -> Element:
    return Element.word(n, (letter,) * k).scale(q_factorial(k, d).inverse())


def lusztig_map(c: CartanData, i: int) -> EndoMap:
    """The algebra map T_i given by its letter images (J is sent to J)."""
    n = c.n
    A = alphabet(n)
    W = lambda *cs: Element.word(n, cs)  # noqa: E731
    di = c.di(i)
    images = {A.J: W(A.J)}
    for j in range(1, n + 1):
        s_alpha = [0] * n
        s_alpha[j - 1] += 1
        s_alpha[i - 1] -= c.aij(i, j)
        images[A.K(j)] = _k_mu(n, s_alpha)
        images[A.Kb(j)] = _k_mu(n, [-x for x in s_alpha])
        if j == i:
            images[A.E(i)] = -W(A.F(i), A.K(i))
            images[A.F(i)] = -W(A.Kb(i), A.E(i))
            continue
        r = -c.aij(i, j)
        e_img = Element.zero(n)
        f_img = Element.zero(n)
        for k in range(r + 1):
            sign = -1 if k % 2 else 1
            e_img = e_img + (_divided(n, A.E(i), r - k, di) * W(A.E(j))
                             * _divided(n, A.E(i), k, di)).scale(q_power(-di * k) * sign)
            f_img = f_img + (_divided(n, A.F(i), k, di) * W(A.F(j))
                             * _divided(n, A.F(i), r - k, di)).scale(q_power(di * k) * sign)
        images[A.E(j)] = e_img
        images[A.F(j)] = f_img
    return EndoMap(n, images, name=f"T{i}")


class _Lusztig:
    """Per-system cache of the maps T_1..T_n."""

    _cache: dict = {}

    @classmethod
    def get(cls, sys_: RewriteSystem, i: int) -> EndoMap:
        key = (id(sys_), i)
        hit = cls._cache.get(key)
        if hit is None or hit[0]() is not sys_:
            import weakref

            m = lusztig_map(sys_.presentation.cartan, i)
            cls._cache[key] = (weakref.ref(sys_), m)
            return m
        return hit[1]


def _require_quotient(sys_: RewriteSystem):
    if sys_.variant != "J1":
        raise ValueError("Lusztig symmetries act on the J -> 1 quotient system")


def lusztig_T(sys_: RewriteSystem, i: int, x: Element) -> Element:
    """``T_i(x)`` in normal form on the J -> 1 quotient."""
    _require_quotient(sys_)
    return _Lusztig.get(sys_, i).apply(sys_, x)


def _apply_seq(sys_: RewriteSystem, seq: Sequence[int], x: Element) -> Element:
    """``T_{seq[0]} T_{seq[1]} ... (x)``: the rightmost map acts first."""
    out = sys_.normalize(x)
    for i in reversed(seq):
        out = lusztig_T(sys_, i, out)
    return out


def generators(n: int) -> list[Element]:
    A = alphabet(n)
    out = []
    for i in range(1, n + 1):
        for kind in ("E", "F", "K", "Kb"):
            out.append(Element.gen(n, kind, i))
    return out


def braid_check(sys_: RewriteSystem, i: int, j: int) -> Report:
    """The m-fold alternating products of T_i and T_j agree on every generator."""
    _require_quotient(sys_)
    c = sys_.presentation.cartan
    m = order_m(c, i, j)
    left = [i if k % 2 == 0 else j for k in range(m)]
    right = [j if k % 2 == 0 else i for k in range(m)]
    rep = Report()
    inst = f"{c.key} (T{i},T{j}) m={m}"
    for g in generators(c.n):
        a = _apply_seq(sys_, left, g)
        b = _apply_seq(sys_, right, g)
        rep.add("braid", inst, a == b, None if a == b else f"{g}: {a} != {b}")
    return rep


def homomorphism_check(sys_: RewriteSystem, i: int) -> Report:
    """T_i sends every defining relation of the quotient to zero."""
    _require_quotient(sys_)
    p = sys_.presentation
    rep = Report()
    inst = f"{p.cartan.key} T{i}"
    n = p.n
    J = Element.gen(n, "J")
    rels = list(zip(p.labels, p.relations)) + [("J=1", J - Element.one(n))]
    for label, r in rels:
        img = lusztig_T(sys_, i, r)
        rep.add("lusztig-homomorphism", inst, not img, None if not img else f"{label} -> {img}")
    return rep


def root_vector(sys_: RewriteSystem, k: int, word: Sequence[int] | None = None) -> Element:
    """``T_{i_1} ... T_{i_{k-1}}(E_{i_k})`` along the reduced word of w_0."""
    _require_quotient(sys_)
    c = sys_.presentation.cartan
    word = tuple(word) if word is not None else longest_word(c).indices
    if not 1 <= k <= len(word):
        raise IndexError(f"root vector position {k} outside 1..{len(word)}")
    return _apply_seq(sys_, word[:k - 1], Element.gen(c.n, "E", word[k - 1]))


def root_vector_f(sys_: RewriteSystem, k: int, word: Sequence[int] | None = None) -> Element:
    _require_quotient(sys_)
    c = sys_.presentation.cartan
    word = tuple(word) if word is not None else longest_word(c).indices
    return _apply_seq(sys_, word[:k - 1], Element.gen(c.n, "F", word[k - 1]))


# ---------------------------------------------------------------------------
# PBW monomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PBWMonomial:
    """``F^b P^s E^a J`` (part "J") or ``prod X^a prod Y^b (1-J)`` (part "XY").

    For the XY part ``a`` and ``b`` are tuples of ``(class, exponents)`` pairs,
    one per equivalence class of the type-1 E (resp. F) indices.
    """

    part: str
    a: tuple
    b: tuple
    s: tuple[int, ...] = ()
    e_degree: tuple[int, ...] = ()
    f_degree: tuple[int, ...] = ()


def _exponents_upto(roots: Sequence[tuple[int, ...]], maxdeg: int):
    """Exponent vectors a with total height of sum a_k beta_k at most maxdeg."""
    heights = [sum(b) for b in roots]

    def rec(k: int, budget: int):
        if k == len(roots):
            yield ()
            return
        for e in range(budget // heights[k] + 1):
            for rest in rec(k + 1, budget - e * heights[k]):
                yield (e,) + rest

    yield from rec(0, maxdeg)


def _weight(roots, a, n) -> tuple[int, ...]:
    out = [0] * n
    for e, beta in zip(a, roots):
        for t in range(n):
            out[t] += e * beta[t]
    return tuple(out)


def _class_roots(c: CartanData, cls: Sequence[int]) -> list[tuple[int, ...]]:
    """Positive roots of the sub-diagram on ``cls`` embedded in rank n."""
    sub = c.subsystem(cls)
    out = []
    for beta in reduced_word_roots(sub, longest_word(sub).indices):
        v = [0] * c.n
        for k, idx in enumerate(sorted(cls)):
            v[idx - 1] = beta[k]
        out.append(tuple(v))
    return out


def enumerate_pbw(c: CartanData, dseq: TypeSequence, maxdeg: int, max_s: int = 1
                  ) -> list[PBWMonomial]:
    """PBW monomials whose E and F parts have total height <= maxdeg.

    The torus exponent of the J part ranges over ``|s_i| <= max_s``.
    """
    n = c.n
    roots = reduced_word_roots(c, longest_word(c).indices)
    out = []
    e_vecs = list(_exponents_upto(roots, maxdeg))
    for b in e_vecs:
        fd = _weight(roots, b, n)
        for a in e_vecs:
            ed = _weight(roots, a, n)
            if sum(ed) + sum(fd) > maxdeg:
                continue
            for s in itertools.product(range(-max_s, max_s + 1), repeat=n):
                out.append(PBWMonomial("J", a, b, s, ed, fd))
    e_classes = [(cls, _class_roots(c, cls)) for cls in equivalence_classes(c, dseq.d_set)]
    f_classes = [(cls, _class_roots(c, cls)) for cls in equivalence_classes(c, dseq.dbar_set)]

    def class_choices(classes):
        per = [[(cls, a) for a in _exponents_upto(rts, maxdeg)] for cls, rts in classes]
        for combo in itertools.product(*per):
            total = [0] * n
            for (cls, a), (_, rts) in zip(combo, classes):
                w = _weight(rts, a, n)
                total = [x + y for x, y in zip(total, w)]
            if sum(total) <= maxdeg:
                yield tuple(combo), tuple(total)

    for a, ed in class_choices(e_classes):
        for b, fd in class_choices(f_classes):
            if sum(ed) + sum(fd) <= maxdeg:
                out.append(PBWMonomial("XY", a, b, (), ed, fd))
    return out


def xy_class_count(c: CartanData, support: Sequence[int], nu: Sequence[int]) -> int:
    """Product over equivalence classes of ``support`` of the Kostant counts of
    the restriction of ``nu``; zero if ``nu`` leaves the support."""
    support = set(support)
    if any(x and (t + 1) not in support for t, x in enumerate(nu)):
        return 0
    out = 1
    for cls in equivalence_classes(c, support):
        sub = c.subsystem(cls)
        out *= kostant_count(sub, [nu[i - 1] for i in sorted(cls)])
    return out


# ---------------------------------------------------------------------------
# basis-count verification
# ---------------------------------------------------------------------------

def _nus(n: int, maxh: int):
    for nu in itertools.product(range(maxh + 1), repeat=n):
        if 0 < sum(nu) <= maxh:
            yield nu


def _e_letters(n):
    A = alphabet(n)
    return [A.E(i) for i in range(1, n + 1)]


def _f_letters(n):
    A = alphabet(n)
    return [A.F(i) for i in range(1, n + 1)]


def _e_f_degrees(n: int, w: tuple) -> tuple[tuple[int, ...], tuple[int, ...]]:
    e = [0] * n
    f = [0] * n
    for x in w:
        if x > 3 * n:
            e[x - 3 * n - 1] += 1
        elif x < n:
            f[x] += 1
    return tuple(e), tuple(f)


def basis_count_check(sys_: RewriteSystem, maxlen: int = 4, oracle_len: int | None = None,
                      qvals: Sequence = (Fraction(5, 3), Fraction(7, 2)),
                      quotient: RewriteSystem | None = None,
                      ideal: RewriteSystem | None = None) -> Report:
    """Compare irreducible-word counts with the Kostant oracle and, when
    ``oracle_len`` is given, with the linear-algebra dimension oracle."""
    p = sys_.presentation
    c, dseq, n = p.cartan, p.dseq, p.n
    inst = f"{c.key} d={dseq}"
    rep = Report()
    q1 = quotient or quotient_J1(sys_)
    for label, letters, sign in (("E-only", _e_letters(n), 1), ("F-only", _f_letters(n), -1)):
        counts = counts_by_degree(graded_counts(q1, maxlen, letters))
        for nu in _nus(n, maxlen):
            deg = tuple(sign * x for x in nu)
            got, want = counts.get(deg, 0), kostant_count(c, nu)
            rep.add(f"quotient {label} = Kostant", inst, got == want,
                    None if got == want else f"nu={nu}: {got} != {want}")

    q0 = ideal or quotient_J0(sys_)
    bideg: dict = {}
    for w in irreducible_words(q0, maxlen):
        key = _e_f_degrees(n, w)
        bideg[key] = bideg.get(key, 0) + 1
        if any(alphabet(n).kind(x) not in ("E", "F") for x in w):
            rep.add("XY-part letters", inst, False, alphabet(n).word_name(w))
    for e_nu in itertools.product(range(maxlen + 1), repeat=n):
        for f_nu in itertools.product(range(maxlen + 1), repeat=n):
            if sum(e_nu) + sum(f_nu) > maxlen:
                continue
            want = xy_class_count(c, dseq.d_set, e_nu) * xy_class_count(c, dseq.dbar_set, f_nu)
            got = bideg.get((e_nu, f_nu), 0)
            rep.add("XY-part = class Kostant product", inst, got == want,
                    None if got == want else f"E {e_nu}, F {f_nu}: {got} != {want}")

    if oracle_len is not None:
        counts = counts_by_degree(graded_counts(sys_, oracle_len))
        extra = derived_identities(p)
        for qv in qvals:
            dims = dimension_oracle(p, oracle_len, qv, extra=extra)
            for deg in sorted(set(dims) | set(counts)):
                got, want = counts.get(deg, 0), dims.get(deg, 0)
                rep.add(f"irreducible = oracle at q={qv}", inst, got == want,
                        None if got == want else f"deg {deg}: {got} != {want}")
    return rep


def lift_to_j_part(sys_: RewriteSystem, x: Element) -> Element:
    """Image of a U_q element (quotient word form) in the J part: x J."""
    return sys_.mul(x, Element.gen(sys_.n, "J"))


def pbw_independence_check(sys_: RewriteSystem, max_exp: int = 1,
                           qval=Fraction(5, 3)) -> Report:
    """The monomials F^b P^s E^a J with exponents <= max_exp (and
    |s_i| <= max_exp) have pairwise distinct, linearly independent normal forms."""
    from .coeff import _QQ, eval_at

    p = sys_.presentation
    c, n = p.cartan, p.n
    q1 = quotient_J1(sys_)
    word = longest_word(c).indices
    ell = len(word)
    ev = [root_vector(q1, k) for k in range(1, ell + 1)]
    fv = [root_vector_f(q1, k) for k in range(1, ell + 1)]

    def power_product(vecs, exps):
        out = Element.one(n)
        for v, e in zip(vecs, exps):
            for _ in range(e):
                out = q1.mul(out, v)
        return out

    elements = []
    rng = range(max_exp + 1)
    for b in itertools.product(rng, repeat=ell):
        fb = power_product(fv, b)
        for a in itertools.product(rng, repeat=ell):
            ea = power_product(ev, a)
            for s in itertools.product(range(-max_exp, max_exp + 1), repeat=n):
                el = sys_.mul(fb, p_monomial(n, s), ea, Element.gen(n, "J"))
                elements.append(((a, b, s), el))
    rep = Report()
    inst = f"{c.key} d={p.dseq}"
    seen = {}
    for key, el in elements:
        frozen = frozenset(el.terms.items())
        if not el or frozen in seen:
            rep.add("pbw-distinct", inst, False, f"{key} vs {seen.get(frozen)}")
        seen[frozen] = key
    rep.add("pbw-distinct", inst, len(seen) == len(elements))
    # rank, grouped by multidegree
    groups: dict = {}
    for key, el in elements:
        groups.setdefault(next(iter(el.multidegrees())) if el else None, []).append(el)
    rank_total = 0
    for deg, els in groups.items():
        rows = []
        for el in els:
            rows.append({w: _QQ(eval_at(cf, qval)) for w, cf in el.terms.items()})
        rank_total += _rank(rows)
    ok = rank_total == len(elements)
    rep.add("pbw-independent", inst, ok, None if ok else f"rank {rank_total} < {len(elements)}")
    return rep


def _rank(rows: list[dict]) -> int:
    pivots: dict = {}
    for row in rows:
        row = {w: x for w, x in row.items() if x}
        while row:
            lead = max(row, key=lambda w: (len(w), w))
            prow = pivots.get(lead)
            if prow is None:
                cl = row[lead]
                pivots[lead] = {w: x / cl for w, x in row.items()}
                break
            cl = row[lead]
            for w, x in prow.items():
                v = row.get(w, 0) - cl * x
                if v:
                    row[w] = v
                else:
                    row.pop(w, None)
    return len(pivots)
