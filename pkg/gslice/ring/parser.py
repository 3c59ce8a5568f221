# gslice/ring/parser.py
"""Recursive-descent parser for the polynomial text format.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := int ['/' uint] | ident | '(' expr ')'

The leading sign and the ``int/uint`` literal are accepted so that every
printed polynomial (including negative leading terms and non-integral
rational coefficients) parses back to itself.
"""
from fractions import Fraction
from typing import List, NamedTuple

from gslice.core.errors import PolyParseError, RingMismatchError, UnknownVariableError
from gslice.ring.poly import MultiPoly, PolyRing


class Token(NamedTuple):
    kind: str  # INT, DECIMAL, IDENT, OP, END
    text: str
    position: int


OPERATORS = set("+-*^()/")


def tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "." and i + 1 < n and text[i + 1].isdigit():
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
                tokens.append(Token("DECIMAL", text[start:i], start))
            else:
                tokens.append(Token("INT", text[start:i], start))
            continue
        if ch.isascii() and ch.isalpha():
            start = i
            while i < n and text[i].isascii() and text[i].isalnum():
                i += 1
            tokens.append(Token("IDENT", text[start:i], start))
            continue
        if ch in OPERATORS:
            tokens.append(Token("OP", ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def accept(self, op: str) -> bool:
        token = self.current
        if token.kind == "OP" and token.text == op:
            self.pos += 1
            return True
        return False

    def parse(self) -> MultiPoly:
        if self.current.kind == "END":
            raise PolyParseError("empty expression", 0)
        result = self.expr()
        if self.current.kind != "END":
            raise PolyParseError(f"unexpected {self.current.text!r}", self.current.position)
        return result

    def expr(self) -> MultiPoly:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        result = self.term()
        if negate:
            result = -result
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MultiPoly:
        result = self.factor()
        while self.accept("*"):
            result = result * self.factor()
        return result

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.accept("^"):
            token = self.current
            if token.kind == "INT":
                self.advance()
                return base ** int(token.text)
            raise PolyParseError("exponent must be a non-negative integer", token.position)
        return base

    def atom(self) -> MultiPoly:
        token = self.current
        if token.kind == "INT":
            self.advance()
            value = int(token.text)
            if self.accept("/"):
                denominator = self.current
                if denominator.kind != "INT" or int(denominator.text) == 0:
                    raise PolyParseError("expected a positive integer denominator", denominator.position)
                self.advance()
                value = Fraction(value, int(denominator.text))
            try:
                return self.ring.constant(value)
            except RingMismatchError as e:
                raise PolyParseError(e.detail, token.position)
        if token.kind == "IDENT":
            self.advance()
            if not self.ring.has(token.text):
                raise UnknownVariableError(token.text, token.position)
            return self.ring.gen(token.text)
        if token.kind == "OP" and token.text == "(":
            self.advance()
            inner = self.expr()
            if not self.accept(")"):
                raise PolyParseError("expected ')'", self.current.position)
            return inner
        if token.kind == "DECIMAL":
            raise PolyParseError("decimal literals are not allowed", token.position)
        if token.kind == "END":
            raise PolyParseError("unexpected end of input", token.position)
        raise PolyParseError(f"unexpected {token.text!r}", token.position)


def parse_poly(ring: PolyRing, text: str) -> MultiPoly:
    """Parse text into a canonical polynomial of ring"""
    return _Parser(ring, text).parse()
