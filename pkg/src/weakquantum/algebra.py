"""Free algebra on the generators E_i, F_i, K_i, Kb_i (= K-bar), J and the
defining presentation of the weak quantum algebra w^d_q(g).

Letters are encoded as small integers whose numeric order is the alphabet
ranking used by the rewriting engine::

    F_1 < ... < F_n < Kb_1 < K_1 < Kb_2 < K_2 < ... < Kb_n < K_n < J < E_1 < ... < E_n

so a word is just a tuple of ints and comparing words (length first, then
the tuples) is the monomial order. Interleaving the torus letters by index
keeps the torus rules finite: irreducible torus words are exactly
``P_1^{s_1} ... P_n^{s_n}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .cartan import CartanData
from .coeff import ONE, ZERO, RationalFunctionQ, as_coeff, q_binomial, q_power

__all__ = [
    "KINDS",
    "Letter",
    "Alphabet",
    "alphabet",
    "Word",
    "Element",
    "TypeSequence",
    "Presentation",
    "build_relations",
    "p_power",
    "p_monomial",
    "equivalence_classes",
    "multidegree",
    "derived_identities",
]

KINDS = ("F", "Kb", "K", "J", "E")

Word = tuple  # tuple[int, ...]


@dataclass(frozen=True, order=True)
class Letter:
    kind: str
    index: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "J":
            if self.index is not None:
                raise ValueError("J carries no index")
        elif self.index is None or self.index < 1:
            raise ValueError(f"{self.kind} needs a positive index")

    def __str__(self):
        return "J" if self.kind == "J" else f"{self.kind}{self.index}"


class Alphabet:
    """Integer codes for the 4n+1 letters of rank ``n``."""

    def __init__(self, n: int):
        self.n = n
        self.size = 4 * n + 1
        self.J = 3 * n
        self.names = [self._name(c) for c in range(self.size)]
        self._by_name = {name: c for c, name in enumerate(self.names)}

    def code(self, kind: str, index: int | None = None) -> int:
        n = self.n
        if kind == "J":
            return self.J
        if index is None or not 1 <= index <= n:
            raise IndexError(f"index {index} of {kind} out of range 1..{n}")
        if kind == "F":
            return index - 1
        if kind == "Kb":
            return n + 2 * (index - 1)
        if kind == "K":
            return n + 2 * (index - 1) + 1
        if kind == "E":
            return 3 * n + index
        raise ValueError(f"unknown generator kind {kind!r}")

    def E(self, i: int) -> int:
        return self.code("E", i)

    def F(self, i: int) -> int:
        return self.code("F", i)

    def K(self, i: int) -> int:
        return self.code("K", i)

    def Kb(self, i: int) -> int:
        return self.code("Kb", i)

    def kind(self, c: int) -> str:
        n = self.n
        if c < n:
            return "F"
        if c < 3 * n:
            return "Kb" if (c - n) % 2 == 0 else "K"
        if c == 3 * n:
            return "J"
        return "E"

    def index(self, c: int) -> int | None:
        n = self.n
        if c == 3 * n:
            return None
        if c > 3 * n:
            return c - 3 * n
        if c < n:
            return c + 1
        return (c - n) // 2 + 1

    def letter(self, c: int) -> Letter:
        return Letter(self.kind(c), self.index(c))

    def _name(self, c: int) -> str:
        k = self.kind(c)
        return "J" if k == "J" else f"{k}{self.index(c)}"

    def by_name(self, name: str) -> int:
        return self._by_name[name]

    def degree(self, c: int) -> tuple[int, ...]:
        k = self.kind(c)
        vec = [0] * self.n
        if k == "E":
            vec[self.index(c) - 1] = 1
        elif k == "F":
            vec[self.index(c) - 1] = -1
        return tuple(vec)

    def word_name(self, w: Sequence[int]) -> str:
        return "*".join(self.names[c] for c in w) if w else "1"

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "1"):
            return ()
        return tuple(self._by_name[t.strip()] for t in text.split("*"))


@lru_cache(maxsize=None)
def alphabet(n: int) -> Alphabet:
    return Alphabet(n)


def multidegree(n: int, w: Sequence[int]) -> tuple[int, ...]:
    """Z^n degree of a word: E_i counts +1, F_i counts -1 at position i."""
    vec = [0] * n
    for c in w:
        if c > 3 * n:
            vec[c - 3 * n - 1] += 1
        elif c < n:
            vec[c] -= 1
    return tuple(vec)


class Element:
    """A finite linear combination of words with coefficients in Q(q).

    Multiplication is concatenation in the free algebra; no relations are
    applied here (see :mod:`weakquantum.rewrite`).
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Word, object] | None = None):
        self.n = n
        out: dict[Word, RationalFunctionQ] = {}
        if terms:
            for w, c in terms.items():
                c = as_coeff(c)
                if c:
                    out[tuple(w)] = c
        self.terms = out

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Element":
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "Element":
        return cls._raw(n, {(): ONE})

    @classmethod
    def scalar(cls, n: int, c) -> "Element":
        c = as_coeff(c)
        return cls._raw(n, {(): c} if c else {})

    @classmethod
    def word(cls, n: int, w: Sequence[int], c=ONE) -> "Element":
        c = as_coeff(c)
        return cls._raw(n, {tuple(w): c} if c else {})

    @classmethod
    def gen(cls, n: int, kind: str, index: int | None = None) -> "Element":
        return cls._raw(n, {(alphabet(n).code(kind, index),): ONE})

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, RationalFunctionQ]]:
        return iter(self.terms.items())

    def coefficient(self, w: Sequence[int]) -> RationalFunctionQ:
        return self.terms.get(tuple(w), ZERO)

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def leading_word(self) -> Word:
        return max(self.terms, key=lambda w: (len(w), w))

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {multidegree(self.n, w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Element"):
        if other.n != self.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __neg__(self):
        return Element._raw(self.n, {w: -c for w, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Element):
            other = Element.scalar(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return Element._raw(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = Element.scalar(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = as_coeff(c)
        if not c:
            return Element.zero(self.n)
        if c.is_one():
            return self
        return Element._raw(self.n, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                if s is None:
                    out[w] = c
                else:
                    s = s + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return Element._raw(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of algebra elements are not defined")
        out = Element.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    # -- printing -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Word, RationalFunctionQ]]:
        """Terms by decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]), reverse=True)

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = alphabet(self.n).names
        out = ""
        for k, (w, c) in enumerate(self.sorted_terms()):
            neg = c.leading_sign() < 0
            if neg:
                c = -c
            wstr = "*".join(names[x] for x in w)
            if c.is_one():
                body = wstr or "1"
            else:
                cstr = c.to_string()
                if c.needs_parens():
                    cstr = f"({cstr})"
                body = f"{cstr}*{wstr}" if wstr else cstr
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    __str__ = to_string

    def __repr__(self):
        return f"Element({self.to_string()})"


# ---------------------------------------------------------------------------
# type sequences and the presentation
# ---------------------------------------------------------------------------

_DSEQ_RE = re.compile(r"^\s*([01]+)\s*\|\s*([01]+)\s*$")


@dataclass(frozen=True)
class TypeSequence:
    """``d = (kappa_1..kappa_n | kappabar_1..kappabar_n)``; bit 1 = type 1."""

    kappa: tuple[int, ...]
    kappabar: tuple[int, ...]

    def __post_init__(self):
        if len(self.kappa) != len(self.kappabar):
            raise ValueError("both halves of a type sequence need the same length")
        if any(b not in (0, 1) for b in self.kappa + self.kappabar):
            raise ValueError("type sequence entries must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.kappa)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TypeSequence":
        m = _DSEQ_RE.match(text)
        if not m:
            raise ValueError(f"bad type sequence {text!r}; expected e.g. '11|01'")
        left, right = m.groups()
        seq = cls(tuple(int(c) for c in left), tuple(int(c) for c in right))
        if n is not None and seq.n != n:
            raise ValueError(f"type sequence {text!r} has length {seq.n}, rank is {n}")
        return seq

    @classmethod
    def all_ones(cls, n: int) -> "TypeSequence":
        return cls((1,) * n, (1,) * n)

    @classmethod
    def all_zeros(cls, n: int) -> "TypeSequence":
        return cls((0,) * n, (0,) * n)

    @classmethod
    def enumerate(cls, n: int) -> list["TypeSequence"]:
        out = []
        for bits in range(4 ** n):
            b = [(bits >> (2 * n - 1 - k)) & 1 for k in range(2 * n)]
            out.append(cls(tuple(b[:n]), tuple(b[n:])))
        return out

    @property
    def d_set(self) -> tuple[int, ...]:
        """1-based indices i with E_i of type 1."""
        return tuple(i + 1 for i, b in enumerate(self.kappa) if b)

    @property
    def dbar_set(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, b in enumerate(self.kappabar) if b)

    def e_type(self, i: int) -> int:
        return 1 if self.kappa[i - 1] else 2

    def f_type(self, i: int) -> int:
        return 1 if self.kappabar[i - 1] else 2

    def __str__(self):
        return "".join(map(str, self.kappa)) + "|" + "".join(map(str, self.kappabar))


@dataclass(frozen=True)
class Presentation:
    cartan: CartanData
    dseq: TypeSequence
    relations: tuple[Element, ...]
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.cartan.n


def _qi(c: CartanData, i: int, e: int) -> RationalFunctionQ:
    """``q_i^e = q^(d_i e)``."""
    return q_power(c.di(i) * e)


def serre(c: CartanData, i: int, j: int, kind: str) -> Element:
    """``sum_s (-1)^s [1-a_ij, s]_{q_i} X_i^(1-a_ij-s) X_j X_i^s`` for X = E or F."""
    n = c.n
    A = alphabet(n)
    xi, xj = A.code(kind, i), A.code(kind, j)
    r = 1 - c.aij(i, j)
    terms = {}
    for s in range(r + 1):
        coeff = q_binomial(r, s, c.di(i))
        if s % 2:
            coeff = -coeff
        terms[(xi,) * (r - s) + (xj,) + (xi,) * s] = coeff
    return Element(n, terms)


def build_relations(cartan: CartanData, dseq: TypeSequence) -> Presentation:
    """All defining relations of w^d_q(g), each as ``lhs - rhs``."""
    n = cartan.n
    if dseq.n != n:
        raise ValueError(f"type sequence length {dseq.n} does not match rank {n}")
    A = alphabet(n)
    W = lambda *cs: Element.word(n, cs)  # noqa: E731
    J = A.J
    rels: list[Element] = []
    labels: list[str] = []

    def add(label: str, el: Element):
        rels.append(el)
        labels.append(label)

    for i in range(1, n + 1):
        add(f"w0:K{i}Kb{i}=J", W(A.K(i), A.Kb(i)) - W(J))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            add(f"w1:K{i}Kb{j}", W(A.K(i), A.Kb(j)) - W(A.Kb(j), A.K(i)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            add(f"w1:K{i}K{j}", W(A.K(i), A.K(j)) - W(A.K(j), A.K(i)))
            add(f"w1:Kb{i}Kb{j}", W(A.Kb(i), A.Kb(j)) - W(A.Kb(j), A.Kb(i)))
    for i in range(1, n + 1):
        add(f"w2:JK{i}", W(J, A.K(i)) - W(A.K(i)))
        add(f"w2:JKb{i}", W(J, A.Kb(i)) - W(A.Kb(i)))
    add("w2:JJ", W(J, J) - W(J))

    for i in range(1, n + 1):
        for kind, sign, typ in (("E", 1, dseq.e_type(i)), ("F", -1, dseq.f_type(i))):
            x = A.code(kind, i)
            for j in range(1, n + 1):
                c = _qi(cartan, i, sign * cartan.aij(i, j))
                if typ == 1:
                    add(f"w3:{kind}{i}:K{j}", W(A.K(j), x) - W(x, A.K(j)).scale(c))
                    add(f"w3:{kind}{i}:Kb{j}", W(x, A.Kb(j)) - W(A.Kb(j), x).scale(c))
                else:
                    add(f"w3:{kind}{i}:K{j}.Kb{j}", W(A.K(j), x, A.Kb(j)) - W(x).scale(c))
            if typ == 2:
                if kind == "E":
                    add(f"w3:J{kind}{i}", W(J, x) - W(x))
                else:
                    add(f"w3:{kind}{i}J", W(x, J) - W(x))

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            el = W(A.E(i), A.F(j)) - W(A.F(j), A.E(i))
            if i == j:
                c = (_qi(cartan, i, 1) - _qi(cartan, i, -1)).inverse()
                el = el - (W(A.K(i)) - W(A.Kb(i))).scale(c)
            add(f"w5:E{i}F{j}", el)

    for kind, tag in (("E", "w6"), ("F", "w7")):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    add(f"{tag}:{kind}{i}{kind}{j}", serre(cartan, i, j, kind))

    return Presentation(cartan, dseq, tuple(rels), tuple(labels))


def p_power(n: int, i: int, k: int) -> Element:
    """``P_i^k``: ``K_i^k`` for k > 0, ``J`` for k = 0, ``Kb_i^(-k)`` for k < 0."""
    return Element.word(n, _p_word(n, i, k))


def _p_word(n: int, i: int, k: int) -> Word:
    A = alphabet(n)
    if k > 0:
        return (A.K(i),) * k
    if k < 0:
        return (A.Kb(i),) * (-k)
    return (A.J,)


def p_monomial(n: int, s: Sequence[int]) -> Element:
    """``P^s = P_1^{s_1} ... P_n^{s_n}`` (a single word)."""
    w: tuple = ()
    for i, k in enumerate(s, start=1):
        w += _p_word(n, i, k)
    return Element.word(n, w)


def equivalence_classes(cartan: CartanData, support: Iterable[int]) -> list[tuple[int, ...]]:
    """Connected components of the Dynkin graph restricted to ``support``."""
    support = sorted(set(support))
    seen: set[int] = set()
    classes = []
    for s in support:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            i = stack.pop()
            for j in support:
                if j not in comp and cartan.aij(i, j) != 0:
                    comp.add(j)
                    stack.append(j)
        seen |= comp
        classes.append(tuple(sorted(comp)))
    return classes


def derived_identities(p: Presentation) -> tuple[Element, ...]:
    """Consequences of the defining relations that are derived by hand:
    J commutes with every generator, and a type 2 generator satisfies the
    type 1 commutations with K_j, Kb_j as well as ``X J = J X = X``.

    Adding them to the relations lets short linear-algebra computations see
    identities whose derivation passes through longer words.
    """
    c, dseq = p.cartan, p.dseq
    n = c.n
    A = alphabet(n)
    W = lambda *cs: Element.word(n, cs)  # noqa: E731
    out = []
    for x in range(A.size):
        if x != A.J:
            out.append(W(A.J, x) - W(x, A.J))
    for i in range(1, n + 1):
        for kind, sign, typ in (("E", 1, dseq.e_type(i)), ("F", -1, dseq.f_type(i))):
            if typ == 1:
                continue
            x = A.code(kind, i)
            out.append(W(x, A.J) - W(x))
            out.append(W(A.J, x) - W(x))
            for j in range(1, n + 1):
                cf = _qi(c, i, sign * c.aij(i, j))
                out.append(W(A.K(j), x) - W(x, A.K(j)).scale(cf))
                out.append(W(x, A.Kb(j)) - W(A.Kb(j), x).scale(cf))
    return tuple(out)
