"""Cartan matrices, symmetrizers, positive roots and reduced words.

Conventions: indices of simple roots are 1-based in every public function
(``reflect(c, 1, v)`` is ``s_1``); root vectors are tuples of coordinates in
the simple-root basis. The simple reflection is ``s_i(a_j) = a_j - a_ij a_i``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Sequence

__all__ = [
    "CartanError",
    "NotCartanError",
    "NotSymmetrizableError",
    "NotFiniteTypeError",
    "CartanData",
    "RootSystem",
    "WeylWord",
    "NAMED_TYPES",
    "validate",
    "cartan_type",
    "reflect",
    "inner",
    "positive_roots",
    "longest_word",
    "is_reduced",
    "reduced_word_roots",
    "kostant_count",
    "order_m",
]


class CartanError(ValueError):
    pass


class NotCartanError(CartanError):
    """Diagonal, sign or zero-pattern conditions fail."""


class NotSymmetrizableError(CartanError):
    pass


class NotFiniteTypeError(CartanError):
    """The symmetrized matrix is not positive definite."""


Vector = tuple[int, ...]


@dataclass(frozen=True)
class CartanData:
    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    name: str | None = None

    @property
    def n(self) -> int:
        return len(self.a)

    def aij(self, i: int, j: int) -> int:
        """Entry ``a_ij`` with 1-based indices."""
        return self.a[i - 1][j - 1]

    def di(self, i: int) -> int:
        return self.d[i - 1]

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if k == i - 1 else 0 for k in range(self.n))

    @property
    def key(self) -> str:
        """Stable identifier: the type name, or a hash of the matrix."""
        if self.name:
            return self.name
        digest = hashlib.sha256(json.dumps(self.a).encode()).hexdigest()[:12]
        return f"M{digest}"

    def subsystem(self, support: Sequence[int]) -> "CartanData":
        """Cartan data of the sub-diagram on ``support`` (1-based, sorted)."""
        idx = sorted(support)
        mat = [[self.aij(i, j) for j in idx] for i in idx]
        return validate(mat)


@dataclass(frozen=True)
class RootSystem:
    positive_roots: tuple[Vector, ...]

    @property
    def ell0(self) -> int:
        return len(self.positive_roots)


@dataclass(frozen=True)
class WeylWord:
    indices: tuple[int, ...]
    reduced: bool = field(default=True)

    def __len__(self):
        return len(self.indices)


NAMED_TYPES: dict[str, list[list[int]]] = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "B3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "C3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "G2": [[2, -3], [-1, 2]],
}


def validate(matrix: Sequence[Sequence[int]], name: str | None = None) -> CartanData:
    """Check a generalized Cartan matrix of finite type and compute its minimal
    symmetrizer ``d`` (``d_i a_ij = d_j a_ji``, gcd 1 on each component)."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise NotCartanError("Cartan matrix must be square and nonempty")
    a = tuple(tuple(int(x) for x in row) for row in matrix)
    for i in range(n):
        if a[i][i] != 2:
            raise NotCartanError(f"diagonal entry a_{i+1}{i+1} = {a[i][i]} != 2")
        for j in range(n):
            if i == j:
                continue
            if a[i][j] > 0:
                raise NotCartanError(f"off-diagonal entry a_{i+1}{j+1} = {a[i][j]} > 0")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NotCartanError(
                    f"a_{i+1}{j+1} = {a[i][j]} but a_{j+1}{i+1} = {a[j][i]}"
                )

    # propagate d_j = d_i a_ij / a_ji along each connected component
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or a[i][j] == 0:
                    continue
                val = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = val
                    comp.append(j)
                    stack.append(j)
                elif d[j] != val:
                    raise NotSymmetrizableError("no symmetrizer d with d_i a_ij = d_j a_ji")
        den = reduce(lambda x, y: x * y // gcd(x, y), (d[k].denominator for k in comp), 1)
        ints = [int(d[k] * den) for k in comp]
        g = reduce(gcd, ints)
        for k, v in zip(comp, ints):
            d[k] = Fraction(v // g)
    dd = tuple(int(x) for x in d)

    # Sylvester's criterion on the symmetrized matrix
    b = [[Fraction(dd[i] * a[i][j]) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if _det([row[:k] for row in b[:k]]) <= 0:
            raise NotFiniteTypeError("symmetrized matrix is not positive definite")
    return CartanData(a, dd, name)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


@lru_cache(maxsize=None)
def cartan_type(name: str) -> CartanData:
    """Named constructor: "A1".."A4", "B2", "B3", "C3", "D4", "G2"."""
    key = name.strip().upper()
    if key not in NAMED_TYPES:
        raise CartanError(f"unknown Cartan type {name!r}; known: {', '.join(NAMED_TYPES)}")
    return validate(NAMED_TYPES[key], name=key)


def reflect(c: CartanData, i: int, v: Sequence[int]) -> Vector:
    """Apply the simple reflection ``s_i`` to a vector in the simple-root basis."""
    row = c.a[i - 1]
    t = sum(row[j] * v[j] for j in range(c.n))
    out = list(v)
    out[i - 1] -= t
    return tuple(out)


def inner(c: CartanData, u: Sequence[int], v: Sequence[int]) -> int:
    """Symmetrized form ``<u, v> = sum_i d_i u_i sum_j a_ij v_j``."""
    return sum(
        c.d[i] * u[i] * sum(c.a[i][j] * v[j] for j in range(c.n)) for i in range(c.n)
    )


def _is_positive(v: Vector) -> bool:
    return all(x >= 0 for x in v) and any(v)


@lru_cache(maxsize=None)
def positive_roots(c: CartanData) -> RootSystem:
    """All positive roots by reflection closure of the simple roots."""
    found = {c.simple_root(i) for i in range(1, c.n + 1)}
    frontier = list(found)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(1, c.n + 1):
                gamma = reflect(c, i, beta)
                if _is_positive(gamma) and gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    ordered = sorted(found, key=lambda v: (sum(v), tuple(-x for x in v)))
    return RootSystem(tuple(ordered))


def _apply_word(c: CartanData, word: Sequence[int], v: Sequence[int]) -> Vector:
    out = tuple(v)
    for i in reversed(word):
        out = reflect(c, i, out)
    return out


def is_reduced(c: CartanData, word: Sequence[int]) -> bool:
    """A word is reduced iff its length equals the number of positive roots
    sent to negative roots by the product of reflections."""
    inversions = sum(
        1 for beta in positive_roots(c).positive_roots
        if not _is_positive(_apply_word(c, word, beta))
    )
    return inversions == len(word)


@lru_cache(maxsize=None)
def longest_word(c: CartanData) -> WeylWord:
    """Reduced expression of w_0, extending ``w`` on the right by the smallest
    ``s_i`` with ``w(a_i) > 0`` until none remains."""
    word: list[int] = []
    while True:
        for i in range(1, c.n + 1):
            if _is_positive(_apply_word(c, word, c.simple_root(i))):
                word.append(i)
                break
        else:
            break
    return WeylWord(tuple(word), reduced=is_reduced(c, word))


def reduced_word_roots(c: CartanData, word: Sequence[int]) -> list[Vector]:
    """``beta_k = s_{i_1} ... s_{i_{k-1}}(a_{i_k})`` for each position of the word."""
    return [_apply_word(c, word[:k], c.simple_root(word[k])) for k in range(len(word))]


def kostant_count(c: CartanData, nu: Sequence[int]) -> int:
    """Number of multisets of positive roots summing to ``nu`` (brute force)."""
    nu = tuple(nu)
    if any(x < 0 for x in nu):
        return 0
    roots = positive_roots(c).positive_roots

    @lru_cache(maxsize=None)
    def count(k: int, rest: Vector) -> int:
        if not any(rest):
            return 1
        if k == len(roots):
            return 0
        beta = roots[k]
        total = 0
        cur = rest
        while all(x >= 0 for x in cur):
            total += count(k + 1, cur)
            cur = tuple(x - y for x, y in zip(cur, beta))
        return total

    return count(0, nu)


def order_m(c: CartanData, i: int, j: int) -> int:
    """Order of ``s_i s_j``: 2, 3, 4, 6 for ``a_ij a_ji`` = 0, 1, 2, 3."""
    if i == j:
        raise ValueError("order_m needs i != j")
    prod = c.aij(i, j) * c.aij(j, i)
    try:
        return {0: 2, 1: 3, 2: 4, 3: 6}[prod]
    except KeyError:
        raise NotFiniteTypeError(f"a_ij a_ji = {prod} is not of finite type") from None
