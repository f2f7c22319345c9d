"""A small expression language for polynomials with rational coefficients.

Grammar (whitespace and newlines are ignored between tokens)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := atom ("^" exponent)?
    exponent := INTEGER | "(" INTEGER ")"
    atom     := INTEGER | NAME | "(" expr ")"

Division is only allowed by a nonzero constant, so ``1/2*x`` is the rational
literal 1/2 times x. Exponents are non-negative integer literals. The
canonical printed form (``str(MPoly)``) parses back to the same polynomial.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import ParseError, UnknownVariable
from ..exact_arith import MPoly

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", src)]

    def where(i: int) -> tuple[int, int]:
        ln = 0
        for k, s in enumerate(line_starts):
            if s <= i:
                ln = k
        return ln + 1, i - line_starts[ln] + 1

    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:  # only trailing whitespace remains
            break
        if m.group(1) is not None:
            kind, text, start = "int", m.group(1), m.start(1)
        elif m.group(2) is not None:
            kind, text, start = "name", m.group(2), m.start(2)
        else:
            kind, text, start = "op", m.group(3), m.start(3)
            if text not in "+-*/^()":
                ln, col = where(start)
                raise ParseError(f"unexpected character {text!r}", ln, col, src)
        ln, col = where(start)
        tokens.append(Token(kind, text, ln, col))
        pos = m.end()
    ln, col = where(len(src))
    tokens.append(Token("end", "", ln, col))
    return tokens


class _Parser:
    def __init__(self, src: str, vars: Sequence[str]):
        self.src = src
        self.vars = tuple(vars)
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.column, self.src)

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def parse(self) -> MPoly:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return p

    def expr(self) -> MPoly:
        acc = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MPoly:
        acc = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op_tok = self.take()
            rhs = self.unary()
            if op_tok.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise self.error("division is only allowed by a constant", op_tok)
                c = rhs.constant_term()
                if not c:
                    raise self.error("division by zero", op_tok)
                acc = acc * (Fraction(1) / c)
        return acc

    def unary(self) -> MPoly:
        if self.tok.kind == "op" and self.tok.text in ("-", "+"):
            op = self.take().text
            v = self.unary()
            return -v if op == "-" else v
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        if self.tok.text == "(":
            self.take("(")
            n = self.exponent_literal()
            self.take(")")
            return n
        return self.exponent_literal()

    def exponent_literal(self) -> int:
        t = self.tok
        if t.kind == "op" and t.text == "-":
            raise self.error("exponents must be non-negative integers")
        if t.kind != "int":
            raise self.error("exponent must be an integer literal")
        self.take()
        return int(t.text)

    def atom(self) -> MPoly:
        t = self.tok
        if t.kind == "int":
            self.take()
            return MPoly.const(Fraction(int(t.text)), self.vars)
        if t.kind == "name":
            self.take()
            if t.text not in self.vars:
                raise UnknownVariable(
                    f"unknown variable {t.text!r} (expected one of {', '.join(self.vars)})",
                    t.line,
                    t.column,
                    self.src,
                )
            return MPoly.var(t.text, self.vars)
        if t.text == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")


def parse_expression(src: str, vars: Sequence[str]) -> MPoly:
    """Parse ``src`` into an exact polynomial in ``vars``."""
    return _Parser(src, vars).parse()


def parse_value(src) -> Fraction | float | bool:
    """Exact value literal: integer, ``a/b``, ``inf``/``+inf`` or a boolean."""
    if isinstance(src, bool):
        return src
    if isinstance(src, int):
        return Fraction(src)
    text = str(src).strip()
    if text in ("inf", "+inf", "∞"):
        return math.inf
    p = parse_expression(text, ())
    return p.constant_term()


def format_value(v) -> str:
    """Inverse of :func:`parse_value` for rationals and infinity."""
    if v == math.inf:
        return "inf"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(Fraction(v)) if isinstance(v, (int, Fraction)) else str(v)


def format_poly(p: MPoly) -> str:
    return str(p)
