"""Coproduct, counit, weak antipode, convolution and the weak Hopf checks.

Everything here works over a completed :class:`RewriteSystem`; tensor factors
are kept in normal form after every multiplication, so two tensors are equal
exactly when their term maps are equal.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence
from weakref import WeakKeyDictionary

from .algebra import Element, alphabet, p_monomial
from .coeff import ONE, ZERO, RationalFunctionQ, as_coeff, q_power
from .reports import CheckResult, Report
from .rewrite import RewriteSystem, _add_into, _mul

__all__ = [
    "TensorElement",
    "EndoMap",
    "identity_map",
    "WeakHopf",
    "all_words",
    "relation_soundness",
    "coalgebra_axiom_checks",
    "counit_generator_identities",
    "weak_antipode_checks",
    "non_hopf_witness",
    "rho_check",
    "split_checks",
    "enumerate_grouplikes",
    "grouplike_checks",
]

TENSOR = " ⊗ "


class TensorElement:
    """Linear combination of k-tuples of words (a k-fold tensor)."""

    __slots__ = ("n", "arity", "terms")

    def __init__(self, n: int, arity: int, terms: Mapping[tuple, object] | None = None):
        self.n = n
        self.arity = arity
        out = {}
        for ws, c in (terms or {}).items():
            c = as_coeff(c)
            if c:
                out[tuple(tuple(w) for w in ws)] = c
        self.terms = out

    @classmethod
    def _raw(cls, n: int, arity: int, terms: dict) -> "TensorElement":
        obj = object.__new__(cls)
        obj.n, obj.arity, obj.terms = n, arity, terms
        return obj

    @classmethod
    def pure(cls, *factors: Element) -> "TensorElement":
        """``factors[0] ⊗ factors[1] ⊗ ...`` expanded into words."""
        n = factors[0].n
        terms: dict = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            c = ONE
            for _, x in combo:
                c = c * x
            _add_into(terms, tuple(w for w, _ in combo), c)
        return cls._raw(n, len(factors), terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        out = dict(self.terms)
        for ws, c in other.terms.items():
            _add_into(out, ws, c)
        return TensorElement._raw(self.n, self.arity, out)

    def __neg__(self):
        return TensorElement._raw(self.n, self.arity, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = as_coeff(c)
        if not c:
            return TensorElement._raw(self.n, self.arity, {})
        return TensorElement._raw(self.n, self.arity, {w: x * c for w, x in self.terms.items()})

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = alphabet(self.n).names
        key = lambda t: tuple((len(w), w) for w in t[0])  # noqa: E731
        out = ""
        for k, (ws, c) in enumerate(sorted(self.terms.items(), key=key, reverse=True)):
            neg = c.leading_sign() < 0
            if neg:
                c = -c
            body = TENSOR.join("*".join(names[x] for x in w) or "1" for w in ws)
            if not c.is_one():
                cstr = c.to_string()
                if c.needs_parens():
                    cstr = f"({cstr})"
                body = f"{cstr}*{body}"
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    __str__ = to_string

    def __repr__(self):
        return f"TensorElement({self.to_string()})"


class EndoMap:
    """A linear map determined by letter images, extended multiplicatively
    (``anti=False``) or anti-multiplicatively (``anti=True``) and normalized.
    """

    def __init__(self, n: int, images: Mapping[int, Element], anti: bool = False,
                 name: str = "", unit: Element | None = None):
        self.n = n
        self.images = dict(images)
        self.anti = anti
        self.name = name
        self.unit = Element.one(n) if unit is None else unit
        self._memo: WeakKeyDictionary = WeakKeyDictionary()

    def image(self, c: int) -> Element:
        return self.images[c]

    def word_image(self, sys_: RewriteSystem, w: tuple) -> Element:
        memo = self._memo.get(sys_)
        if memo is None:
            memo = self._memo[sys_] = {}
        res = memo.get(w)
        if res is not None:
            return res
        if not w:
            res = sys_.normalize(self.unit)
        elif len(w) == 1:
            res = sys_.normalize(self.images[w[0]])
        elif self.anti:
            res = sys_.normalize(self.word_image(sys_, w[1:]) * self.word_image(sys_, w[:1]))
        else:
            res = sys_.normalize(self.word_image(sys_, w[:-1]) * self.word_image(sys_, w[-1:]))
        memo[w] = res
        return res

    def apply(self, sys_: RewriteSystem, x: Element) -> Element:
        acc: dict = {}
        for w, c in x.terms.items():
            for u, d in self.word_image(sys_, w).terms.items():
                _add_into(acc, u, _mul(c, d))
        return Element._raw(self.n, acc)

    def __call__(self, sys_: RewriteSystem, x: Element) -> Element:
        return self.apply(sys_, x)

    def then(self, other: "EndoMap", sys_: RewriteSystem, name: str = "") -> "EndoMap":
        """The composite ``other o self`` (apply self first)."""
        images = {c: other.apply(sys_, img) for c, img in self.images.items()}
        return EndoMap(self.n, images, anti=self.anti != other.anti,
                       name=name or f"{other.name}∘{self.name}",
                       unit=other.apply(sys_, self.unit))

    def __repr__(self):
        return f"EndoMap({self.name or '?'}, anti={self.anti})"


def identity_map(n: int) -> EndoMap:
    A = alphabet(n)
    return EndoMap(n, {c: Element.word(n, (c,)) for c in range(A.size)}, name="id")


def all_words(n: int, maxlen: int, letters: Iterable[int] | None = None):
    """All words of length <= maxlen over the given letters (default: all)."""
    letters = list(range(alphabet(n).size)) if letters is None else list(letters)
    for k in range(maxlen + 1):
        yield from itertools.product(letters, repeat=k)


class WeakHopf:
    """The structure maps of w^d_q(g) on top of a completed rewrite system."""

    def __init__(self, sys_: RewriteSystem):
        self.sys = sys_
        self.n = n = sys_.n
        self.dseq = sys_.presentation.dseq
        self.cartan = sys_.presentation.cartan
        self.A = A = alphabet(n)
        W = lambda *cs: Element.word(n, cs)  # noqa: E731
        one = Element.one(n)
        self._letter_delta: dict[int, TensorElement] = {}
        for i in range(1, n + 1):
            E, F, K, Kb = A.E(i), A.F(i), A.K(i), A.Kb(i)
            left = one if self.dseq.e_type(i) == 1 else W(A.J)
            self._letter_delta[E] = (TensorElement.pure(left, W(E))
                                     + TensorElement.pure(W(E), W(K)))
            right = one if self.dseq.f_type(i) == 1 else W(A.J)
            self._letter_delta[F] = (TensorElement.pure(W(F), right)
                                     + TensorElement.pure(W(Kb), W(F)))
            self._letter_delta[K] = TensorElement.pure(W(K), W(K))
            self._letter_delta[Kb] = TensorElement.pure(W(Kb), W(Kb))
        self._letter_delta[A.J] = TensorElement.pure(W(A.J), W(A.J))

        t_images = {A.J: W(A.J)}
        for i in range(1, n + 1):
            t_images[A.E(i)] = -W(A.E(i), A.Kb(i))
            t_images[A.F(i)] = -W(A.K(i), A.F(i))
            t_images[A.K(i)] = W(A.Kb(i))
            t_images[A.Kb(i)] = W(A.K(i))
        self.T = EndoMap(n, t_images, anti=True, name="T")
        self.id = identity_map(n)
        eps_images = {c: Element.scalar(n, 0 if A.kind(c) in ("E", "F") else 1)
                      for c in range(A.size)}
        self.eps = EndoMap(n, eps_images, name="eps")
        self._word_delta: dict[int, dict] = {}
        self._letter_delta_k: dict[int, dict] = {2: self._letter_delta}

    # -- tensors ------------------------------------------------------------
    def tensor_mul(self, a: TensorElement, b: TensorElement) -> TensorElement:
        """Componentwise product with every factor normalized."""
        sys_ = self.sys
        out: dict = {}
        for ws, c in a.terms.items():
            for vs, d in b.terms.items():
                factors = []
                for w, v in zip(ws, vs):
                    u = w + v
                    sys_.check_length(len(u))
                    factors.append(sys_.nf_word(u).items())
                cd = _mul(c, d)
                for combo in itertools.product(*factors):
                    coef = cd
                    for _, x in combo:
                        coef = _mul(coef, x)
                    _add_into(out, tuple(w for w, _ in combo), coef)
        return TensorElement._raw(self.n, a.arity, out)

    def normalize_tensor(self, t: TensorElement) -> TensorElement:
        unit = TensorElement._raw(self.n, t.arity, {((),) * t.arity: ONE})
        return self.tensor_mul(t, unit)

    # -- coproduct ----------------------------------------------------------
    def _letter_images(self, k: int) -> dict:
        imgs = self._letter_delta_k.get(k)
        if imgs is None:
            prev = self._letter_images(k - 1)
            imgs = {c: self._expand_last(t) for c, t in prev.items()}
            self._letter_delta_k[k] = imgs
        return imgs

    def _expand_last(self, t: TensorElement) -> TensorElement:
        out: dict = {}
        for ws, c in t.terms.items():
            for (a, b), d in self.delta_word(ws[-1]).terms.items():
                _add_into(out, ws[:-1] + (a, b), _mul(c, d))
        return TensorElement._raw(self.n, t.arity + 1, out)

    def delta_word(self, w: tuple, k: int = 2) -> TensorElement:
        """k-fold coproduct of a single word (k tensor factors)."""
        memo = self._word_delta.setdefault(k, {})
        res = memo.get(w)
        if res is not None:
            return res
        if not w:
            res = TensorElement._raw(self.n, k, {((),) * k: ONE})
        elif len(w) == 1:
            res = self.normalize_tensor(self._letter_images(k)[w[0]])
        else:
            res = self.tensor_mul(self.delta_word(w[:-1], k), self.delta_word(w[-1:], k))
        memo[w] = res
        return res

    def delta(self, x: Element, k: int = 2) -> TensorElement:
        out: dict = {}
        for w, c in x.terms.items():
            for ws, d in self.delta_word(w, k).terms.items():
                _add_into(out, ws, _mul(c, d))
        return TensorElement._raw(self.n, k, out)

    def delta_on_factor(self, t: TensorElement, pos: int) -> TensorElement:
        """Apply Δ to tensor factor ``pos`` (``Δ ⊗ id`` is pos 0)."""
        out: dict = {}
        for ws, c in t.terms.items():
            for (a, b), d in self.delta_word(ws[pos]).terms.items():
                _add_into(out, ws[:pos] + (a, b) + ws[pos + 1:], _mul(c, d))
        return TensorElement._raw(self.n, t.arity + 1, out)

    def counit_on_factor(self, t: TensorElement, pos: int) -> TensorElement:
        out: dict = {}
        for ws, c in t.terms.items():
            e = self.counit_word(ws[pos])
            if e:
                _add_into(out, ws[:pos] + ws[pos + 1:], _mul(c, e))
        return TensorElement._raw(self.n, t.arity - 1, out)

    # -- counit and antipode ------------------------------------------------
    def counit_word(self, w: tuple) -> RationalFunctionQ:
        kinds = self.A
        return ZERO if any(kinds.kind(c) in ("E", "F") for c in w) else ONE

    def counit(self, x: Element) -> RationalFunctionQ:
        acc = ZERO
        for w, c in x.terms.items():
            if self.counit_word(w):
                acc = acc + c
        return acc

    def antipode(self, x: Element) -> Element:
        return self.T.apply(self.sys, x)

    def normalize(self, x: Element) -> Element:
        return self.sys.normalize(x)

    # -- convolution --------------------------------------------------------
    def convolution(self, maps: Sequence[EndoMap], x: Element) -> Element:
        """``(f_1 * f_2 * ... * f_m)(x) = mu (f_1 ⊗ ... ⊗ f_m) Δ_m(x)``."""
        sys_ = self.sys
        m = len(maps)
        if m == 1:
            return maps[0].apply(sys_, x)
        acc: dict = {}
        for ws, c in self.delta(x, m).terms.items():
            prod = maps[0].word_image(sys_, ws[0])
            for f, w in zip(maps[1:], ws[1:]):
                if not prod:
                    break
                prod = sys_.normalize(prod * f.word_image(sys_, w))
            for u, d in prod.terms.items():
                _add_into(acc, u, _mul(c, d))
        return Element._raw(self.n, acc)

    def check_weak_antipode(self, x: Element) -> tuple[bool, bool]:
        """``(id*T*id)(x) = x`` and ``(T*id*T)(x) = T(x)`` in normal form."""
        a = self.convolution([self.id, self.T, self.id], x) == self.normalize(x)
        b = self.convolution([self.T, self.id, self.T], x) == self.antipode(x)
        return a, b

    # -- J decomposition ----------------------------------------------------
    def split(self, x: Element) -> tuple[Element, Element]:
        J = Element.gen(self.n, "J")
        return self.sys.mul(x, J), self.sys.mul(x, Element.one(self.n) - J)

    def is_grouplike(self, x: Element) -> bool:
        x = self.normalize(x)
        if not x:
            return False
        return self.delta(x) == self.normalize_tensor(TensorElement.pure(x, x))


# ---------------------------------------------------------------------------
# checks producing reports
# ---------------------------------------------------------------------------

def _instance(h: WeakHopf) -> str:
    return f"{h.cartan.key} d={h.dseq}"


def relation_soundness(sys_: RewriteSystem) -> Report:
    """Every defining relation normalizes to zero."""
    rep = Report()
    p = sys_.presentation
    inst = f"{p.cartan.key} d={p.dseq}"
    for label, r in zip(p.labels, p.relations):
        nf = sys_.normalize(r)
        rep.add("relations", inst, not nf, None if not nf else f"{label} -> {nf}")
    return rep


def coalgebra_axiom_checks(h: WeakHopf, maxlen: int = 3) -> Report:
    """Δ, ε and T respect the relations; coassociativity and the counit
    identities hold on every word of length <= maxlen."""
    rep = Report()
    inst = _instance(h)
    p = h.sys.presentation
    for label, r in zip(p.labels, p.relations):
        d = h.delta(r)
        rep.add("delta-relation", inst, not d, None if not d else f"Δ({label}) = {d}")
        e = h.counit(r)
        rep.add("counit-relation", inst, not e, None if not e else f"ε({label}) = {e}")
        t = h.antipode(r)
        rep.add("antipode-relation", inst, not t, None if not t else f"T({label}) = {t}")
    names = h.A
    for w in all_words(h.n, maxlen):
        x = Element.word(h.n, w)
        d = h.delta(x)
        left = h.delta_on_factor(d, 0)
        right = h.delta_on_factor(d, 1)
        label = names.word_name(w)
        rep.add("coassociativity", inst, left == right,
                None if left == right else f"{label}: {left} != {right}")
        nx = TensorElement.pure(h.normalize(x))
        for pos, tag in ((0, "(ε⊗id)"), (1, "(id⊗ε)")):
            c = h.counit_on_factor(d, pos)
            rep.add("counit-identity", inst, c == nx,
                    None if c == nx else f"{tag}Δ({label}) = {c}")
    return rep


def counit_generator_identities(h: WeakHopf) -> Report:
    """The scalar identities among counit values used to show that ε
    respects the relations (several of them read 0 = 0)."""
    rep = Report()
    inst = _instance(h)
    A, n = h.A, h.n
    eps = lambda c: h.counit(Element.word(n, (c,)))  # noqa: E731
    checks = []
    for i in range(1, n + 1):
        qi = lambda e: q_power(h.cartan.di(i) * e)  # noqa: E731,B023
        for j in range(1, n + 1):
            checks.append((f"ε(K{i})ε(Kb{j}) = ε(Kb{i})ε(K{j})",
                           eps(A.K(i)) * eps(A.Kb(j)), eps(A.Kb(i)) * eps(A.K(j))))
            delta = (eps(A.K(i)) - eps(A.Kb(i))) / (qi(1) - qi(-1)) if i == j else ZERO
            checks.append((f"ε(E{i})ε(F{j}) - ε(F{j})ε(E{i})",
                           eps(A.E(i)) * eps(A.F(j)) - eps(A.F(j)) * eps(A.E(i)), delta))
        checks.append((f"ε(J)ε(K{i}) = ε(K{i})", eps(A.J) * eps(A.K(i)), eps(A.K(i))))
        checks.append((f"ε(J)ε(Kb{i}) = ε(Kb{i})", eps(A.J) * eps(A.Kb(i)), eps(A.Kb(i))))
        checks.append((f"ε(Kb{i})ε(E{i}) = q^-2 ε(E{i})ε(Kb{i})",
                       eps(A.Kb(i)) * eps(A.E(i)), q_power(-2) * eps(A.E(i)) * eps(A.Kb(i))))
        checks.append((f"ε(Kb{i})ε(F{i}) = q^2 ε(F{i})ε(Kb{i})",
                       eps(A.Kb(i)) * eps(A.F(i)), q_power(2) * eps(A.F(i)) * eps(A.Kb(i))))
    for label, lhs, rhs in checks:
        rep.add("counit-generators", inst, lhs == rhs, None if lhs == rhs else label)
    return rep


def weak_antipode_checks(h: WeakHopf, maxlen: int = 3) -> Report:
    rep = Report()
    inst = _instance(h)
    for w in all_words(h.n, maxlen):
        a, b = h.check_weak_antipode(Element.word(h.n, w))
        label = h.A.word_name(w)
        rep.add("id*T*id", inst, a, None if a else label)
        rep.add("T*id*T", inst, b, None if b else label)
    return rep


def non_hopf_witness(h: WeakHopf) -> Report:
    """J differs from 1 while (id*T)(J) = J; a true antipode S would force
    S(J) J = 1, impossible for an idempotent J != 1."""
    rep = Report()
    inst = f"{_instance(h)} [{h.sys.variant}]"
    n = h.n
    J = Element.gen(n, "J")
    one = Element.one(n)
    nj, n1 = h.normalize(J), h.normalize(one)
    rep.add("J != 1", inst, nj != n1, None if nj != n1 else f"J normalizes to {nj}")
    conv = h.convolution([h.id, h.T], J)
    ok = conv == nj and conv != h.normalize(one.scale(h.counit(J)))
    rep.add("(id*T)(J) = J != ε(J)1", inst, ok, None if ok else f"(id*T)(J) = {conv}")
    idem = h.sys.mul(J, one - J)
    rep.add("J(1-J) = 0", inst, not idem, None if not idem else str(idem))
    return rep


def rho_check(h: WeakHopf) -> Report:
    """Images of the U_q relations under e -> EJ, f -> FJ, k -> K,
    k^-1 -> Kb (with J as the unit) normalize to zero."""
    from .algebra import serre

    rep = Report()
    inst = _instance(h)
    n, A, c = h.n, h.A, h.cartan
    W = lambda *cs: Element.word(n, cs)  # noqa: E731
    J = W(A.J)
    e = {i: W(A.E(i), A.J) for i in range(1, n + 1)}
    f = {i: W(A.F(i), A.J) for i in range(1, n + 1)}
    k = {i: W(A.K(i)) for i in range(1, n + 1)}
    kb = {i: W(A.Kb(i)) for i in range(1, n + 1)}
    qi = lambda i, m: q_power(c.di(i) * m)  # noqa: E731
    rels = []
    for i in range(1, n + 1):
        rels.append((f"k{i}k{i}^-1=1", k[i] * kb[i] - J))
        rels.append((f"k{i}^-1k{i}=1", kb[i] * k[i] - J))
        for j in range(1, n + 1):
            rels.append((f"k{i}k{j}=k{j}k{i}", k[i] * k[j] - k[j] * k[i]))
            rels.append((f"k{i}e{j}k{i}^-1", k[i] * e[j] * kb[i] - e[j].scale(qi(i, c.aij(i, j)))))
            rels.append((f"k{i}f{j}k{i}^-1", k[i] * f[j] * kb[i] - f[j].scale(qi(i, -c.aij(i, j)))))
            rel = e[i] * f[j] - f[j] * e[i]
            if i == j:
                rel = rel - (k[i] - kb[i]).scale((qi(i, 1) - qi(i, -1)).inverse())
            rels.append((f"e{i}f{j}-f{j}e{i}", rel))
            if i != j:
                for kind, gens in (("E", e), ("F", f)):
                    s = serre(c, i, j, kind)
                    img = Element.zero(n)
                    for w, coef in s.terms.items():
                        term = J
                        for x in w:
                            term = term * gens[A.index(x)]
                        img = img + term.scale(coef)
                    rels.append((f"serre-{kind}{i}{j}", img))
    for label, r in rels:
        # progressive normalization keeps the words short
        acc = Element.zero(n)
        for w, coef in r.terms.items():
            acc = acc + h.sys.mul(*[Element.word(n, (x,)) for x in w]).scale(coef)
        rep.add("rho", inst, not acc, None if not acc else f"{label} -> {acc}")
    return rep


def split_checks(h: WeakHopf, samples: Iterable[tuple[Element, Element]]) -> Report:
    rep = Report()
    inst = _instance(h)
    for x, y in samples:
        xj, xr = h.split(x)
        ok = h.normalize(xj + xr) == h.normalize(x)
        rep.add("x = xJ + x(1-J)", inst, ok, None if ok else str(x))
        yj, yr = h.split(y)
        cross = h.sys.mul(xj, yr)
        cross2 = h.sys.mul(yr, xj)
        ok2 = not cross and not cross2
        rep.add("xJ * y(1-J) = 0", inst, ok2, None if ok2 else f"{x} ; {y}")
    return rep


def torus_words(h: WeakHopf, maxlen: int):
    """Irreducible words over K, Kb, J of length <= maxlen (including 1)."""
    A = h.A
    letters = [A.J] + [A.K(i) for i in range(1, h.n + 1)] + [A.Kb(i) for i in range(1, h.n + 1)]
    from .rewrite import irreducible_words

    return sorted(irreducible_words(h.sys, maxlen, sorted(letters)), key=lambda w: (len(w), w))


def enumerate_grouplikes(h: WeakHopf, maxlen: int = 4) -> list[tuple]:
    """Normal-form monomials over K, Kb, J (plus 1) that are group-like."""
    return [w for w in torus_words(h, maxlen) if h.is_grouplike(Element.word(h.n, w))]


def p_monomials(n: int, maxlen: int) -> set[tuple]:
    """Words of ``P^s`` (normalized shape) whose length is at most maxlen."""
    out = set()
    A = alphabet(n)
    for s in itertools.product(range(-maxlen, maxlen + 1), repeat=n):
        if sum(abs(x) for x in s) > maxlen:
            continue
        if not any(s):
            out.add((A.J,))
            continue
        w = ()
        for i, k in enumerate(s, start=1):
            w += (A.K(i),) * k if k > 0 else (A.Kb(i),) * (-k)
        out.add(w)
    return out


def grouplike_checks(h: WeakHopf, maxlen: int = 4) -> Report:
    rep = Report()
    inst = _instance(h)
    found = set(enumerate_grouplikes(h, maxlen))
    expected = {w for w in p_monomials(h.n, maxlen)} | {()}
    expected = {w for w in expected if len(w) <= maxlen}
    ok = found == expected
    diff = None
    if not ok:
        names = h.A
        diff = ("missing " + ", ".join(names.word_name(w) for w in sorted(expected - found))
                + "; extra " + ", ".join(names.word_name(w) for w in sorted(found - expected)))
    rep.add("grouplike-set", inst, ok, diff)
    for w in sorted(found):
        x = Element.word(h.n, w)
        ok = h.is_grouplike(x)
        rep.add("Δ(x) = x⊗x", inst, ok, None if ok else h.A.word_name(w))
    # regularity P^s P^-s P^s = P^s
    for s in itertools.product(range(-3, 4), repeat=h.n):
        if sum(abs(v) for v in s) > 3:
            continue
        ps = p_monomial(h.n, s)
        pm = p_monomial(h.n, [-v for v in s])
        lhs = h.sys.mul(ps, pm, ps)
        ok = lhs == h.normalize(ps)
        rep.add("regularity", inst, ok, None if ok else f"s={s}")
    return rep
