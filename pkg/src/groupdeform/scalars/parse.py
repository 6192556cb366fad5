"""Parser for the canonical text form of scalars (``4*t^3 - 27``, ``q^-1``, ``(1 + q^2)/q``)."""

from __future__ import annotations

import re
from typing import Any

from .cyclo import Cyclo
from .frac import Frac, simplify
from .poly import Poly

__all__ = ["parse_scalar", "ParseError"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ParseError(ValueError):
    pass


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        if m.group(1):
            out.append(("num", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        elif m.group(3) and not m.group(3).isspace():
            if m.group(3) not in "+-*/^()":
                raise ParseError("unexpected character %r" % m.group(3))
            out.append(("op", m.group(3)))
    return out


class _Parser:
    def __init__(self, text: str, p: int, cyclotomic: dict[str, int]):
        self.toks = _tokens(text)
        self.i = 0
        self.p = p
        self.cyclotomic = cyclotomic

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise ParseError("expected %r" % (value or "token"))
        self.i += 1
        return tok

    def expr(self) -> Any:
        acc = self.term()
        while (tok := self.peek()) and tok[1] in "+-" and tok[0] == "op":
            self.i += 1
            rhs = self.term()
            acc = acc + rhs if tok[1] == "+" else acc - rhs
        return acc

    def term(self) -> Any:
        acc = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.i += 1
            rhs = self.unary()
            if tok[1] == "*":
                acc = acc * rhs
            else:
                if not rhs:
                    raise ZeroDivisionError("division by zero in %r" % "".join(t for _, t in self.toks))
                acc = Frac(acc, rhs) if not isinstance(acc, Frac) and not isinstance(rhs, Frac) else acc / rhs
        return acc

    def unary(self) -> Any:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self) -> Any:
        base = self.atom()
        tok = self.peek()
        if tok and tok == ("op", "^"):
            self.i += 1
            sign = 1
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.i += 1
                sign = -1 if t[1] == "-" else 1
            if self.peek() and self.peek() == ("op", "("):
                self.i += 1
                n = self.intexpr()
                self.take(")")
            else:
                kind, val = self.take()
                if kind != "num":
                    raise ParseError("exponent must be an integer")
                n = int(val)
            return base ** (sign * n)
        return base

    def intexpr(self) -> int:
        sign = 1
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.i += 1
            sign = -1 if t[1] == "-" else 1
        kind, val = self.take()
        if kind != "num":
            raise ParseError("exponent must be an integer")
        return sign * int(val)

    def atom(self) -> Any:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(int(val), self.p)
        if kind == "name":
            if val in self.cyclotomic:
                return Poly.const(Cyclo.gen(self.cyclotomic[val], val), self.p)
            return Poly.var(val, self.p)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError("unexpected %r" % val)


def parse_scalar(text: str, p: int = 0, cyclotomic: dict[str, int] | None = None) -> Any:
    """Parse ``text`` into a Poly (or a Frac when a division does not cancel).

    ``p`` selects reduction modulo a prime.  ``cyclotomic`` maps a symbol to a
    conductor r, making it a primitive r-th root of unity.
    """
    parser = _Parser(text, p, cyclotomic or {})
    if not parser.toks:
        raise ParseError("empty expression")
    value = parser.expr()
    if parser.peek() is not None:
        raise ParseError("trailing input at token %d" % parser.i)
    return simplify(value)
