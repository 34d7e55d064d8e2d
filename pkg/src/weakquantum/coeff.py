"""Exact arithmetic in the rational function field Q(q).

Two value types live here:

* :class:`LaurentPoly` -- a Laurent polynomial in ``q`` with rational
  coefficients, stored densely as ``(low, coeffs)``.
* :class:`RationalFunctionQ` -- a quotient ``num / den`` kept in a canonical
  form, so that equal values always have equal representations.

The canonical form of a rational function is: ``den`` is an ordinary
polynomial with constant term 1, ``num`` is a Laurent polynomial, and the two
share no common factor. Every power of ``q`` is pushed into ``num``.

No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

try:  # gmpy2's mpq is a much faster drop-in for Fraction
    from gmpy2 import mpq as _QQ
except ImportError:  # pragma: no cover
    _QQ = Fraction

__all__ = [
    "LaurentPoly",
    "RationalFunctionQ",
    "ONE",
    "ZERO",
    "Q",
    "q_power",
    "q_int",
    "q_factorial",
    "q_binomial",
    "eval_at",
    "as_coeff",
]

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient tuples, index = degree)
# ---------------------------------------------------------------------------

def _trim(coeffs: list) -> tuple:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [_QQ(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [_QQ(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db]
        if not c:
            continue
        c = c / lead
        quot[k] = c
        for j, y in enumerate(b):
            rem[k + j] -= c * y
    return _trim(quot), _trim(rem[:db] if db else [])


def _pgcd(a: tuple, b: tuple) -> tuple:
    """Monic gcd over Q."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


_ONE_POLY = (_QQ(1),)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial ``sum_k c_k q^k`` with exact rational ``c_k``.

    Stored as the lowest exponent plus a dense coefficient tuple whose first and
    last entries are nonzero. The zero polynomial is ``low = 0, coeffs = ()``.
    """

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, low: int = 0, coeffs: Iterable[Scalar] = ()):
        cs = [_QQ(c) for c in coeffs]
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        cs = cs[start:]
        self.low = low + start if cs else 0
        self.coeffs = _trim(cs)
        self._hash = None

    @classmethod
    def _raw(cls, low: int, coeffs: tuple) -> "LaurentPoly":
        # caller guarantees both ends of coeffs are nonzero
        obj = object.__new__(cls)
        obj.low = low if coeffs else 0
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, Scalar]) -> "LaurentPoly":
        terms = {k: _QQ(v) for k, v in terms.items() if v}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(k, 0) for k in range(lo, hi + 1)])

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls(exp, (coeff,))

    @property
    def terms(self) -> dict[int, Fraction]:
        return {self.low + i: _frac(c) for i, c in enumerate(self.coeffs) if c}

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.low == 0 and self.coeffs == _ONE_POLY

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __neg__(self):
        return LaurentPoly._raw(self.low, tuple(-c for c in self.coeffs))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [_QQ(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return LaurentPoly(lo, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            return LaurentPoly._raw(self.low + other.low, tuple(x * c for x in self.coeffs))
        if len(self.coeffs) == 1:
            c = self.coeffs[0]
            return LaurentPoly._raw(self.low + other.low, tuple(c * y for y in other.coeffs))
        return LaurentPoly._raw(self.low + other.low, _pmul(self.coeffs, other.coeffs))

    def evaluate(self, value) -> Fraction:
        value = _QQ(value)
        acc = _QQ(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if self.low:
            acc *= value ** self.low
        return _frac(acc)

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.high, self.low - 1, -1):
            c = self.coeffs[k - self.low]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _fmt_rational(mag)
            else:
                qpart = "q" if k == 1 else f"q^{k}"
                body = qpart if mag == 1 else f"{_fmt_rational(mag)}*{qpart}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.to_string()})"


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(int(c.numerator), int(c.denominator))


def _fmt_rational(c) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunctionQ:
    """An element of Q(q) in canonical form.

    Use the module level constructors (:data:`Q`, :func:`q_power`,
    :func:`as_coeff`) and the arithmetic operators; the constructor itself
    canonicalizes an arbitrary ``num / den`` pair.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None or den.is_one():
            self.num, self.den = num, _ONE_LP
        else:
            self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunctionQ":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_one(self) -> bool:
        return self.den is _ONE_LP and self.num.is_one()

    def is_laurent(self) -> bool:
        return self.den is _ONE_LP or self.den.is_one()

    def __bool__(self):
        return bool(self.num.coeffs)

    # -- equality / hashing -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalFunctionQ):
            try:
                other = as_coeff(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return RationalFunctionQ._raw(-self.num, self.den)

    def __add__(self, other):
        other = as_coeff(other)
        if not self.num.coeffs:
            return other
        if not other.num.coeffs:
            return self
        d1, d2 = self.den, other.den
        if d1 is _ONE_LP and d2 is _ONE_LP:
            return RationalFunctionQ._raw(self.num + other.num, _ONE_LP)
        if d1 == d2:
            return _make(self.num + other.num, d1)
        return _make(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_coeff(other))

    def __rsub__(self, other):
        return as_coeff(other) + (-self)

    def __mul__(self, other):
        other = as_coeff(other)
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        if self.den is _ONE_LP and other.den is _ONE_LP:
            return RationalFunctionQ._raw(self.num * other.num, _ONE_LP)
        if other.den is _ONE_LP and other.num.is_monomial():
            return RationalFunctionQ._raw(self.num * other.num, self.den)
        if self.den is _ONE_LP and self.num.is_monomial():
            return RationalFunctionQ._raw(self.num * other.num, other.den)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunctionQ":
        if not self.num.coeffs:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        if self.num.is_monomial():
            c = self.num.coeffs[0]
            return RationalFunctionQ._raw(
                self.den * LaurentPoly.monomial(-self.num.low, 1 / c), _ONE_LP
            )
        return _make(self.den, self.num)

    def __truediv__(self, other):
        return self * as_coeff(other).inverse()

    def __rtruediv__(self, other):
        return as_coeff(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- printing -----------------------------------------------------------
    def balanced(self) -> tuple[LaurentPoly, LaurentPoly]:
        """``(N, D)`` with value ``N / D``, ``D`` centred around ``q^0`` and
        with positive top coefficient. Used only for display."""
        if self.is_laurent():
            return self.num, _ONE_LP
        den = self.den
        shift = -((den.high + den.low) // 2)
        sign = 1 if den.coeffs[-1] > 0 else -1
        factor = LaurentPoly.monomial(shift, sign)
        return self.num * factor, den * factor

    def leading_sign(self) -> int:
        n, _ = self.balanced()
        if n.is_zero():
            return 0
        return 1 if n.coeffs[-1] > 0 else -1

    def needs_parens(self) -> bool:
        """True when the printed form is a sum and must be bracketed as a factor."""
        return self.is_laurent() and len([c for c in self.num.coeffs if c]) > 1

    def to_string(self) -> str:
        n, d = self.balanced()
        if d.is_one():
            return n.to_string()
        dstr = f"({d.to_string()})^-1"
        if n.is_one():
            return dstr
        if n == LaurentPoly.monomial(0, -1):
            return "-" + dstr
        if n.is_monomial():
            return f"{n.to_string()}*{dstr}"
        return f"({n.to_string()})*{dstr}"

    __str__ = to_string

    def __repr__(self):
        return f"RationalFunctionQ({self.to_string()})"

    @classmethod
    def from_string(cls, text: str) -> "RationalFunctionQ":
        from .parsing import parse_coefficient

        return parse_coefficient(text)


_ONE_LP = LaurentPoly._raw(0, _ONE_POLY)


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in Q(q)")
    if num.is_zero():
        return LaurentPoly(), _ONE_LP
    shift = num.low - den.low
    n, d = num.coeffs, den.coeffs
    if len(d) > 1 and len(n) > 1:
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
    c = d[0]
    if c != 1:
        n = tuple(x / c for x in n)
        d = tuple(x / c for x in d)
    if len(d) == 1:
        return LaurentPoly._raw(shift, n), _ONE_LP
    return LaurentPoly._raw(shift, n), LaurentPoly._raw(0, d)


def _make(num: LaurentPoly, den: LaurentPoly) -> RationalFunctionQ:
    n, d = _canonical(num, den)
    return RationalFunctionQ._raw(n, d)


def as_coeff(x) -> RationalFunctionQ:
    """Coerce an int, Fraction, LaurentPoly or RationalFunctionQ into Q(q)."""
    if isinstance(x, RationalFunctionQ):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is _QQ:
        return _const(_QQ(x))
    if isinstance(x, LaurentPoly):
        return RationalFunctionQ._raw(x, _ONE_LP)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(q)")


def _const(c) -> RationalFunctionQ:
    if not c:
        return ZERO
    return RationalFunctionQ._raw(LaurentPoly._raw(0, (c,)), _ONE_LP)


ZERO = RationalFunctionQ._raw(LaurentPoly(), _ONE_LP)
ONE = RationalFunctionQ._raw(_ONE_LP, _ONE_LP)
Q = RationalFunctionQ._raw(LaurentPoly._raw(1, _ONE_POLY), _ONE_LP)


@lru_cache(maxsize=None)
def q_power(k: int) -> RationalFunctionQ:
    """The monomial ``q^k``."""
    return RationalFunctionQ._raw(LaurentPoly._raw(k, _ONE_POLY), _ONE_LP)


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def q_int(m: int, d: int = 1) -> RationalFunctionQ:
    """The quantum integer ``[m]_x = (x^m - x^-m) / (x - x^-1)`` at ``x = q^d``."""
    if d < 1:
        raise ValueError("q_int needs d >= 1")
    return (q_power(d * m) - q_power(-d * m)) / (q_power(d) - q_power(-d))


@lru_cache(maxsize=None)
def q_factorial(m: int, d: int = 1) -> RationalFunctionQ:
    """``[m]!_x = [m]_x ... [1]_x`` with ``[0]!_x = 1``."""
    if m < 0:
        raise ValueError("q_factorial needs m >= 0")
    out = ONE
    for k in range(1, m + 1):
        out = out * q_int(k, d)
    return out


@lru_cache(maxsize=None)
def q_binomial(m: int, s: int, d: int = 1) -> RationalFunctionQ:
    """Gaussian binomial ``[m]! / ([s]! [m-s]!)`` at ``x = q^d``."""
    if m < 0 or s < 0 or s > m:
        raise ValueError(f"q_binomial needs 0 <= s <= m, got m={m}, s={s}")
    return q_factorial(m, d) / (q_factorial(s, d) * q_factorial(m - s, d))


def eval_at(f, value) -> Fraction:
    """Substitute ``q := value`` and return the exact rational result.

    Raises ZeroDivisionError when the denominator vanishes at ``value``.
    """
    f = as_coeff(f)
    value = _QQ(value)
    if value == 0 and (f.num.low < 0):
        raise ZeroDivisionError("q = 0 is not admissible for a negative power of q")
    den = f.den.evaluate(value)
    if den == 0:
        raise ZeroDivisionError(f"denominator vanishes at q = {value}")
    return f.num.evaluate(value) / den
