"""Surface syntax for algebra elements and coefficients.

Grammar (whitespace insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' ['-'] int)?
    atom   := gen | number | 'q' | '(' expr ')'
    gen    := ('E'|'F'|'K'|'Kb') index | 'J'

A rational ``a/b`` is the number ``a`` divided by ``b``. Division and negative
powers are only allowed for scalars (elements of Q(q)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import Element, alphabet
from .coeff import ONE, Q, RationalFunctionQ, as_coeff

__all__ = ["ParseError", "IndexOutOfRank", "parse", "parse_coefficient", "tokenize"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class IndexOutOfRank(ParseError):
    pass


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<gen>Kb\d+|[EFK]\d+|J)|(?P<q>q)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, gen, q, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", end))
    return out


class _Parser:
    def __init__(self, text: str, n: int | None):
        self.text = text
        self.n = n
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def take(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def is_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def scalar(self, c) -> Element:
        return Element.scalar(self.n or 0, c)

    def run(self) -> Element:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        out = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return out

    def expr(self) -> Element:
        neg = False
        if self.is_op("+", "-"):
            neg = self.take().text == "-"
        out = self.term()
        if neg:
            out = -out
        while self.is_op("+", "-"):
            op = self.take().text
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Element:
        out = self.factor()
        while self.is_op("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op.text == "*":
                out = out * rhs
            else:
                out = out * self.scalar(_as_scalar(rhs, self, op).inverse() if rhs else _zero_div(self, op))
        return out

    def factor(self) -> Element:
        base = self.atom()
        if not self.is_op("^"):
            return base
        caret = self.take()
        neg = False
        if self.is_op("-"):
            self.take()
            neg = True
        if self.tok.kind != "num":
            raise self.error("expected an integer exponent")
        k = int(self.take().text)
        if not neg:
            return base ** k
        if not base:
            _zero_div(self, caret)
        return self.scalar(_as_scalar(base, self, caret).inverse() ** k)

    def atom(self) -> Element:
        t = self.tok
        if t.kind == "num":
            self.take()
            return self.scalar(int(t.text))
        if t.kind == "q":
            self.take()
            return self.scalar(Q)
        if t.kind == "gen":
            self.take()
            return self.generator(t)
        if self.is_op("("):
            self.take()
            inner = self.expr()
            if not self.is_op(")"):
                raise self.error("expected ')'")
            self.take()
            return inner
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")

    def generator(self, t: Token) -> Element:
        if self.n is None:
            raise ParseError(f"generator {t.text!r} not allowed in a coefficient", t.pos, self.text)
        if t.text == "J":
            return Element.gen(self.n, "J")
        kind = "Kb" if t.text.startswith("Kb") else t.text[0]
        idx = int(t.text[len(kind):])
        if not 1 <= idx <= self.n:
            raise IndexOutOfRank(
                f"generator {t.text} has index {idx} outside 1..{self.n}", t.pos, self.text
            )
        return Element.gen(self.n, kind, idx)


def _as_scalar(x: Element, p: _Parser, tok: Token) -> RationalFunctionQ:
    if not x:
        return as_coeff(0)
    if set(x.terms) != {()}:
        raise ParseError("only scalars can be inverted", tok.pos, p.text)
    return x.terms[()]


def _zero_div(p: _Parser, tok: Token):
    raise ParseError("division by zero", tok.pos, p.text)


def parse(text: str, n: int) -> Element:
    """Parse ``text`` into an element of the free algebra of rank ``n``."""
    alphabet(n)
    return _Parser(text, n).run()


def parse_coefficient(text: str) -> RationalFunctionQ:
    """Parse a pure coefficient such as ``(q + q^-1)/(q - q^-1)``."""
    el = _Parser(text, None).run()
    if not el:
        return as_coeff(0)
    return el.terms.get((), ONE) if set(el.terms) == {()} else _fail(text)


def _fail(text: str):
    raise ParseError(f"{text!r} is not a coefficient")
