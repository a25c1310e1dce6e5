"""Parser for the text form of polynomials and multivectors.

Accepts what the renderers print, e.g. ``3/2*x1^2*x3*d23 - x2*d31``, plus
parentheses and any ordering of a d-symbol's digits (``d13`` = -``d31``).

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | x1 | x2 | x3 | d<digits> | '(' expr ')'

A product of two multivectors is their wedge product.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .multivector import MultiVector, UnsupportedDegree
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|(x[123])|(d[123]+)|(\^|\*|/|\+|-|\(|\)))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r} at position {bad}")
        num, var, dsym, op = m.groups()
        out.append(("num", num) if num else ("var", var) if var else ("d", dsym) if dsym else ("op", op))
        pos = m.end()
    return out


def _as_mv(v) -> MultiVector:
    return v if isinstance(v, MultiVector) else MultiVector.function(v)


def _add(u, v):
    if isinstance(u, Poly) and isinstance(v, Poly):
        return u + v
    u, v = _as_mv(u), _as_mv(v)
    if u.degree != v.degree and not (u.is_zero() or v.is_zero()):
        raise ParseError(f"cannot add terms of degree {u.degree} and {v.degree}")
    return u + v


def _mul(u, v):
    if isinstance(u, Poly) and isinstance(v, Poly):
        return u * v
    if isinstance(u, Poly):
        return v.scale(u)
    if isinstance(v, Poly):
        return u.scale(v)
    try:
        return u ^ v
    except UnsupportedDegree as exc:
        raise ParseError(str(exc)) from None


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = "end of input" if tok[0] is None else repr(tok[1])
            raise ParseError(f"expected {want} at token {self.i}, got {got}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.i}: {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = _add(v, rhs if op == "+" else _mul(Poly.const(-1), rhs))
        return v

    def term(self):
        v = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            v = _mul(v, self.unary())
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return _mul(Poly.const(-1), self.unary())
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            n = int(self.take("num")[1])
            if not isinstance(v, Poly):
                raise ParseError("only polynomials can be raised to a power")
            v = v ** n
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            q = Fraction(int(val))
            if self.peek() == ("op", "/"):
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator")
                q /= den
            return Poly.const(q)
        if kind == "var":
            self.take()
            return Poly.var(int(val[1]))
        if kind == "d":
            self.take()
            idx = tuple(int(ch) for ch in val[1:])
            if len(set(idx)) != len(idx):
                raise ParseError(f"{val}: repeated index")
            return MultiVector.basis_element(idx)
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind is None:
            raise ParseError("unexpected end of input")
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> Poly:
    v = _Parser(text).parse()
    if isinstance(v, MultiVector):
        if v.degree == 0:
            return v.components[0]
        raise ParseError("expected a polynomial, got a multivector")
    return v


def parse_multivector(text: str, degree: int | None = None) -> MultiVector:
    v = _as_mv(_Parser(text).parse())
    if degree is not None and v.degree != degree and not v.is_zero():
        raise ParseError(f"expected degree {degree}, got degree {v.degree}")
    if degree is not None and v.is_zero():
        return MultiVector.zero(degree)
    return v
