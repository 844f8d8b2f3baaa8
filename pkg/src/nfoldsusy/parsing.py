"""Recursive-descent parser for the expression grammar.

Grammar (UTF-8 text):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := ('-' | '+')* atom ('^' INT)?
    atom     := INT ('/' INT)? | generator | 'D' ['^' INT] '(' expr ')'
              | '(' expr ')'

Generators: ``w<k>``, ``u<k>``, ``V+``, ``V-``, ``C<k>``, ``alpha<k>``,
``beta<k>``, ``gamma<k>``; a derivative is written with trailing
apostrophes (``w1''``) or via ``D^m(...)`` applied to any subexpression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .config import max_deriv_order
from .diffring import (
    DiffPoly,
    Family,
    Generator,
    param_by_name,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        hint = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{hint}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<vgen>V[+-]'*)
  | (?P<dfunc>D(?:\^\d+)?\()
  | (?P<name>(?:w|u|C|alpha|beta|gamma)\d+'*)
  | (?P<int>\d+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _generator_from_token(tok: str, pos: int) -> Generator:
    primes = len(tok) - len(tok.rstrip("'"))
    stem = tok[: len(tok) - primes]
    if primes > max_deriv_order():
        raise ParseError(f"derivative order {primes} exceeds the configured cap", pos)
    if stem == "V+":
        return Generator(Family.VPLUS, 0, primes)
    if stem == "V-":
        return Generator(Family.VMINUS, 0, primes)
    head = stem[0]
    if head in ("w", "u") and stem[1:].isdigit():
        fam = Family.W if head == "w" else Family.U
        return Generator(fam, int(stem[1:]), primes)
    if head == "C" and stem[1:].isdigit():
        if primes:
            raise ParseError("constants cannot carry derivatives", pos)
        return Generator(Family.C, int(stem[1:]), 0)
    if primes:
        raise ParseError("parameters cannot carry derivatives", pos)
    try:
        return param_by_name(stem)
    except ValueError:
        raise ParseError(f"unknown generator {stem!r}", pos, ("generator",)) from None


class _Parser:
    def __init__(self, text: str, n: int):
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return
        raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos, (op,))

    def parse(self) -> DiffPoly:
        poly = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", pos, ("end of input",))
        return poly

    def expr(self) -> DiffPoly:
        poly = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                rhs = self.term()
                poly = poly + rhs if val == "+" else poly - rhs
            else:
                return poly

    def term(self) -> DiffPoly:
        poly = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.i += 1
                poly = poly * self.factor()
            else:
                return poly

    def factor(self) -> DiffPoly:
        sign = 1
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                if val == "-":
                    sign = -sign
            else:
                break
        poly = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.i += 1
            kind, val, pos = self.next()
            if kind != "int":
                raise ParseError("power must be a positive integer", pos, ("integer",))
            exp = int(val)
            if exp < 1:
                raise ParseError("power must be a positive integer", pos)
            poly = poly**exp
        return poly * sign if sign < 0 else poly

    def atom(self) -> DiffPoly:
        kind, val, pos = self.next()
        if kind == "int":
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.i += 1
                kind3, val3, pos3 = self.next()
                if kind3 != "int":
                    raise ParseError("denominator must be an integer", pos3, ("integer",))
                den = int(val3)
                if den == 0:
                    raise ParseError("zero denominator", pos3)
                return DiffPoly.constant(self.n, Fraction(num, den))
            return DiffPoly.constant(self.n, num)
        if kind in ("name", "vgen"):
            return DiffPoly.generator(self.n, _generator_from_token(val, pos))
        if kind == "dfunc":
            times = 1
            if "^" in val:
                times = int(val[2:-1])
            inner = self.expr()
            self.expect_op(")")
            return inner.derive(times)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(
            f"unexpected {val or 'end of input'!r}",
            pos,
            ("number", "generator", "("),
        )


def parse(text: str, n: int) -> DiffPoly:
    """Parse an expression into a polynomial with ambient N = ``n``."""
    return _Parser(text, n).parse()
