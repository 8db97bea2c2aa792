"""Parser for polynomial text.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | IDENT | "(" expr ")"

``omega`` denotes the cube root of unity; every other identifier is a
variable (or a parameter of a rational-function coefficient field).
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .fields import OMEGA, QQ, QQ_OMEGA
from .polynomial import PolyRing, Polynomial

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")

OMEGA_NAME = "omega"


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("int", num))
        elif ident is not None:
            tokens.append(("ident", ident))
        elif op is not None:
            if op not in "+-*^/()":
                raise ParseError(f"unexpected character {op!r} at offset {m.start(3)}")
            tokens.append(("op", op))
    return tokens


def identifiers(text: str) -> list[str]:
    """Identifiers of ``text`` in order of first appearance."""
    seen: list[str] = []
    for kind, value in tokenize(text):
        if kind == "ident" and value not in seen:
            seen.append(value)
    return seen


class _Parser:
    def __init__(self, tokens, ring: PolyRing):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        params = getattr(ring.field, "params", ())
        self.params = set(params)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, v = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal")
            return base ** int(v)
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "int":
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "int":
                    raise ParseError("rational literal needs an integer denominator")
                if int(den) == 0:
                    raise ParseError("zero denominator in rational literal")
                return self.ring.constant(Fraction(int(v), int(den)))
            return self.ring.constant(int(v))
        if kind == "ident":
            if v == OMEGA_NAME:
                if self.ring.field != QQ_OMEGA:
                    raise ParseError("omega is only available over QQ(omega)")
                return self.ring.constant(OMEGA)
            if v in self.ring.variables:
                return self.ring.gen(v)
            if v in self.params:
                return self.ring.constant(self.ring.field.gen(v))
            raise ParseError(f"unknown identifier {v!r}")
        if (kind, v) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {v!r}")


def parse_polynomial(text: str, ring: PolyRing | None = None) -> Polynomial:
    """Parse ``text``; without a ring, variables are taken in order of appearance."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string")
    tokens = tokenize(text)
    if ring is None:
        names = [v for v in identifiers(text) if v != OMEGA_NAME]
        field = QQ_OMEGA if OMEGA_NAME in identifiers(text) else QQ
        ring = PolyRing(tuple(names), field)
    return _Parser(tokens, ring).parse()


def parse_scalar(text: str, field=QQ):
    """Parse a constant expression (e.g. ``-3/4`` or ``1 + 2*omega``) into ``field``."""
    if OMEGA_NAME in identifiers(text) and field == QQ:
        field = QQ_OMEGA
    p = parse_polynomial(text, PolyRing((), field))
    return p.constant_coeff()
