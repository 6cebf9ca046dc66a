"""Recursive descent parser for polynomial expressions with rational coefficients.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' exponent)?
    exponent := INT | '(' ['-' | '+'] INT ')'
    atom   := INT | NAME | '(' expr ')'

Implicit multiplication is rejected, ``/`` needs a nonzero constant divisor
and exponents are nonnegative integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import ParseError
from .mvpoly import DEFAULT_UNIVERSE, MultiPoly, Universe

INPUT_VARIABLES = ("t1", "t2")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class RationalPoly:
    """``num / den`` with ``den > 0`` and ``gcd(content(num), den) == 1``."""

    num: MultiPoly
    den: int = 1

    @classmethod
    def make(cls, num: MultiPoly, den: int = 1) -> RationalPoly:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if not num:
            return cls(num, 1)
        g = gcd(num.content_int(), den)
        if g > 1:
            num, den = num.exact_div_int(g), den // g
        return cls(num, den)

    def __add__(self, other: RationalPoly) -> RationalPoly:
        return RationalPoly.make(self.num.scale(other.den) + other.num.scale(self.den), self.den * other.den)

    def __sub__(self, other: RationalPoly) -> RationalPoly:
        return RationalPoly.make(self.num.scale(other.den) - other.num.scale(self.den), self.den * other.den)

    def __mul__(self, other: RationalPoly) -> RationalPoly:
        return RationalPoly.make(self.num * other.num, self.den * other.den)

    def __neg__(self) -> RationalPoly:
        return RationalPoly(-self.num, self.den)

    def __pow__(self, n: int) -> RationalPoly:
        return RationalPoly(self.num**n, self.den**n)

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/{self.den}"


class _Parser:
    def __init__(self, text: str, universe: Universe, allowed: frozenset[str]):
        self.text = text
        self.universe = universe
        self.allowed = allowed
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, str, int]]:
        tokens = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i]!r}", i)
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append((kind, m.group(kind), start))
            i = m.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, at = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", at)

    def parse(self) -> RationalPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        kind, val, at = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}; implicit multiplication is not allowed", at)
        return value

    def expr(self) -> RationalPoly:
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> RationalPoly:
        value = self.unary()
        while True:
            kind, val, at = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if not rhs.num.is_constant:
                        raise ParseError("division by a non-constant expression", at)
                    c = rhs.num.constant_value()
                    if c == 0:
                        raise ParseError("division by zero", at)
                    value = RationalPoly.make(value.num.scale(rhs.den), value.den * c)
            else:
                return value

    def unary(self) -> RationalPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> RationalPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        kind, val, at = self.take()
        if kind == "int":
            return int(val)
        if kind == "op" and val == "(":
            sign = 1
            k2, v2, a2 = self.peek()
            if k2 == "op" and v2 in "+-":
                self.take()
                sign = -1 if v2 == "-" else 1
            k3, v3, a3 = self.take()
            if k3 != "int":
                raise ParseError("exponent must be an integer literal", a3)
            self.expect_op(")")
            if sign < 0 and int(v3) != 0:
                raise ParseError("negative exponents are not allowed", at)
            return int(v3)
        if kind == "op" and val == "-":
            raise ParseError("negative exponents are not allowed", at)
        raise ParseError("exponent must be a nonnegative integer literal", at)

    def atom(self) -> RationalPoly:
        kind, val, at = self.take()
        if kind == "int":
            return RationalPoly(MultiPoly.constant(int(val), self.universe))
        if kind == "name":
            if val not in self.allowed:
                raise ParseError(f"variable {val!r} is not allowed here (allowed: {sorted(self.allowed)})", at)
            return RationalPoly(MultiPoly.variable(val, self.universe))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", at)


def parse_expression(
    text: str,
    variables: Iterable[str] = INPUT_VARIABLES,
    universe: Universe = DEFAULT_UNIVERSE,
) -> RationalPoly:
    """Parse ``text`` into an exact rational-coefficient polynomial."""
    allowed = frozenset(variables)
    for v in allowed:
        universe.index(v)
    return _Parser(text, universe, allowed).parse()


def parse_poly(text: str, universe: Universe = DEFAULT_UNIVERSE) -> MultiPoly:
    """Parse an integer-coefficient polynomial in any universe variable."""
    r = parse_expression(text, universe.names, universe)
    if r.den != 1:
        raise ParseError(f"{text!r} has non-integer coefficients")
    return r.num
