"""Parser for polynomial expressions, ideals and ring specifications.

Grammar (implicit multiplication is an error)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      # "/" only by a nonzero constant
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import parse_field
from .poly import Polynomial, RingContext

__all__ = ["ParseError", "parse_polynomial", "parse_ideal", "parse_ring"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        pointer = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {pointer}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect_end(self):
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {tok[1]!r}")

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                result = result * rhs
            else:
                terms = rhs.as_dict()
                zero = (0,) * self.ring.nvars
                if set(terms) != {zero}:
                    self.error("division only by a nonzero constant", op_tok)
                result = result.scale(self.ring.field.inv(terms[zero]))
        return result

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("exponent must be a nonnegative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring.variables:
                self.error(f"unknown variable {val!r}", tok)
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close)
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def parse_polynomial(text: str, ring: RingContext) -> Polynomial:
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        p.error("empty expression")
    result = p.expr()
    p.expect_end()
    return result


def _split_top_level(text: str) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_ideal(text: str, ring: RingContext) -> list[Polynomial]:
    """Comma-separated generators; an empty string is the zero ideal."""
    if not text.strip():
        return []
    gens = []
    for chunk, offset in _split_top_level(text):
        try:
            gens.append(parse_polynomial(chunk, ring))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, offset + exc.pos) from None
    return gens


_RING_RE = re.compile(r"^\s*(QQ|Q|GF\(\s*\d+\s*\))\s*\[([^\]]*)\]\s*$")


def parse_ring(spec: str) -> RingContext:
    """Parse ``QQ[x,y]`` or ``GF(32003)[x1,x2]`` into a polynomial ring."""
    m = _RING_RE.match(spec)
    if not m:
        raise ParseError("expected FIELD[var,...] with FIELD = QQ or GF(p)", spec, 0)
    field = parse_field(m.group(1))
    names = [v.strip() for v in m.group(2).split(",") if v.strip()]
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
            raise ParseError(f"bad variable name {v!r}", spec, spec.index(v))
    if not names:
        raise ParseError("ring needs at least one variable", spec, 0)
    return RingContext.polynomial_ring(names, field)


def format_coefficient(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
