"""Polynomial string grammar.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

``^`` binds tightest and whitespace is ignored, so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import re

from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column + 1}: {text!r}")
        self.column = column


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), col))
        else:
            tokens.append(("op", m.group(3), col))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(msg, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("exponent must be a non-negative integer", tok)
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return self.ring.constant(tok[1])
        if tok[0] == "name":
            if tok[1] not in self.ring.variables:
                self.error(f"unknown variable {tok[1]!r}", tok)
            return self.ring.var(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        self.error("unexpected token", tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` (e.g. ``"X1*X4 + 2*X2^3"``) into a polynomial of ``ring``."""
    return _Parser(text, ring).parse()
