"""Recursive-descent parser for the polynomial input language.

Grammar (usual precedence, ``^`` binds tightest and takes a literal exponent)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

Division is only by nonzero constants of the coefficient field (over Q(s) that
includes expressions in ``s`` such as ``s^2``).
"""

import re

from ..errors import ParseError
from .poly import PolyRing
from .scalars import QQ, field_from_name

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            if op == "**":
                raise ParseError("use '^' for powers", start, text)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0
        names = {g: ring.gen(g) for g in ring.gens}
        if ring.field.param is not None:
            names[ring.field.param] = ring.constant(ring.field.parameter())
        self.names = names

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] in ("int", "name") or tok[:2] == ("op", "("):
            self.error(f"missing '*' before {tok[1]!r} (implicit multiplication is not allowed)")
        if tok[0] != "end":
            self.error(f"unexpected token {tok[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            q = self.unary()
            if tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant():
                    self.error("division by a non-constant polynomial", tok)
                if not q:
                    self.error("division by zero", tok)
                p = p / q
        return p

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("exponent must be a nonnegative integer literal")
            self.take()
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return self.ring.constant(tok[1])
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.names:
                self.error(f"unknown variable {tok[1]!r}", tok)
            return self.names[tok[1]]
        if tok[:2] == ("op", "("):
            self.take()
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return p
        if tok[0] == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected token {tok[1]!r}")


def parse_polynomial(text, field=QQ, gens=("x", "y", "z")):
    """Parse ``text`` into a canonical :class:`Poly` over ``field``.

    >>> str(parse_polynomial("x^2 + y^2 - z^2"))
    'x^2 + y^2 - z^2'
    """
    if isinstance(field, str):
        field = field_from_name(field)
    ring = gens if isinstance(gens, PolyRing) else PolyRing(field, gens)
    return _Parser(text, ring).parse()
