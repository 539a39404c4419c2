"""Parser for the test-function language.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' int)?
    atom   := rational | rational 'i' | 'z[' i ',' j ']' | 'zb[' i ',' j ']' | '(' expr ')'

A rational is ``digits`` or ``digits/digits`` (the slash binds into the
literal only when a digit follows it).  A leading '-' is accepted before an
atom as a convenience.  Indices are 1-based: i in 1..q, j in 1..p.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from . import expr as X
from .errors import BadIndex, ParseError

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<var>zb|z)\[
  | (?P<op>[-+*/^(),\]i])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            line, c = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, c)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group(kind)
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, p: int, q: int):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.p = p
        self.q = q

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        line, c = _line_col(self.text, tok.pos)
        raise ParseError(msg, line, c)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind not in ("op",):
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def parse(self) -> X.Expr:
        e = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return e

    def expr(self) -> X.Expr:
        e = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            r = self.term()
            e = e + r if op == "+" else e - r
        return e

    def term(self) -> X.Expr:
        e = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next()
            r = self.factor()
            if op.text == "*":
                e = e * r
            else:
                if r is X.ZERO:
                    self.error("division by zero", op)
                e = e / r
        return e

    def factor(self) -> X.Expr:
        a = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            neg = False
            if self.peek().text == "-":
                self.next()
                neg = True
            t = self.peek()
            if t.kind != "num" or "/" in t.text:
                self.error("expected an integer exponent")
            self.next()
            k = int(t.text)
            if neg and a is X.ZERO:
                self.error("negative power of zero", t)
            a = X.power(a, -k if neg else k)
        return a

    def _index(self) -> int:
        t = self.peek()
        if t.kind != "num" or "/" in t.text:
            self.error("expected an index")
        self.next()
        return int(t.text)

    def atom(self) -> X.Expr:
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.next()
            return X.neg(self.atom())
        if t.kind == "num":
            self.next()
            val = mpq(t.text)
            if self.peek().kind == "op" and self.peek().text == "i":
                self.next()
                return X.const((0, val))
            return X.const(val)
        if t.kind == "op" and t.text == "i":
            self.next()
            return X.const((0, 1))
        if t.kind == "var":
            self.next()
            i = self._index()
            self.expect(",")
            j = self._index()
            self.expect("]")
            if not (1 <= i <= self.q and 1 <= j <= self.p):
                line, c = _line_col(self.text, t.pos)
                raise BadIndex(f"index [{i},{j}] out of range for p={self.p}, q={self.q} "
                               f"(line {line}, column {c})")
            return X.var(t.text.rstrip("["), self.p * (i - 1) + (j - 1))
        if t.kind == "op" and t.text == "(":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_expr(text: str, p: int = 2, q: int = 2) -> X.Expr:
    return _Parser(text, p, q).parse()
