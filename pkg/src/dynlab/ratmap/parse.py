"""Recursive-descent parser for rational-function expressions.

Accepted syntax is a superset of the documented map grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*      # juxtaposition multiplies
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] integer | "^" "(" ["-"] integer ")")?
    atom   := integer | name | "(" expr ")"

The variable (``t`` by default) and any generator declared in the coefficient
context are the only names allowed.  Expressions evaluate straight to
:class:`RatFunc`, so ``(2*t^2+2*t)/(2)`` is already cancelled on return.
"""

from __future__ import annotations

import re

from ..errors import MapSyntaxError, ZeroDenominator
from ..exactnum.extension import Extension
from ..exactnum.fields import QQ
from ..exactnum.poly import UniPoly
from ..exactnum.ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise MapSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _symbols(ctx):
    table = {}
    for level in ctx.tower():
        if isinstance(level, Extension):
            table[level.name] = level
    return table


class _Parser:
    def __init__(self, text, ctx, var):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.var = var
        self.symbols = _symbols(ctx)
        if var in self.symbols:
            raise MapSyntaxError(f"variable {var!r} clashes with a declared symbol", 0)

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise MapSyntaxError(f"expected {kind!r}, found {tok[1] if tok[1] is not None else 'end'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise MapSyntaxError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise MapSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                value = value * self.unary()
            elif kind == "/":
                tok = self.take()
                rhs = self.unary()
                if rhs.num.is_zero():
                    raise ZeroDenominator(f"division by zero at position {tok[2]}")
                value = value / rhs
            elif kind in ("int", "name", "("):
                value = value * self.power()
            else:
                return value

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        paren = self.peek()[0] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        exp = self.take("int")[1] * sign
        if paren:
            self.take(")")
        if exp < 0 and base.num.is_zero():
            raise ZeroDenominator(f"zero to a negative power at position {self.peek()[2]}")
        return base**exp

    def atom(self):
        kind, value, pos = self.take()
        if kind == "int":
            return RatFunc(UniPoly((value,), self.ctx))
        if kind == "name":
            if value == self.var:
                return RatFunc(UniPoly.gen(self.ctx))
            if value in self.symbols:
                return RatFunc(UniPoly((self.ctx(self.symbols[value].gen),), self.ctx))
            raise MapSyntaxError(f"unknown name {value!r}", pos)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise MapSyntaxError(f"unexpected {value if value is not None else 'end'!r}", pos)


def parse_ratfunc(text: str, ctx=QQ, var: str = "t") -> RatFunc:
    return _Parser(text, ctx, var).parse()


def parse_polynomial(text: str, var: str = "t", ctx=QQ) -> UniPoly:
    r = parse_ratfunc(text, ctx, var)
    if r.den.degree > 0:
        raise MapSyntaxError("expected a polynomial", 0)
    return r.num * ctx.inv(r.den.lc)


def parse_scalar(text: str, ctx=QQ):
    """A constant such as ``-3/7`` or ``w+1``; ``inf`` is left to the caller."""
    r = parse_ratfunc(text, ctx, var="\0")
    if r.num.degree > 0 or r.den.degree > 0:
        raise MapSyntaxError("expected a constant", 0)
    return ctx.div(r.num.coeff(0), r.den.coeff(0))


_DECL = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(.+?)\s*$")


def parse_field(declarations, base=QQ):
    """Build a context tower from declarations like ``"w: w^2+w+1"``.

    Later declarations may use earlier generators in their coefficients.
    """
    if isinstance(declarations, str):
        declarations = [declarations]
    ctx = base
    for decl in declarations:
        m = _DECL.match(decl)
        if not m:
            raise MapSyntaxError(f"bad field declaration {decl!r}", 0)
        name, body = m.groups()
        if name == "t":
            raise MapSyntaxError("'t' is reserved for the map variable", 0)
        modulus = parse_polynomial(body, var=name, ctx=ctx)
        if modulus.degree < 1:
            raise MapSyntaxError(f"modulus of {name!r} must have positive degree", 0)
        ctx = Extension(ctx, name, modulus)
    return ctx


def parse_map(text: str, ctx=QQ):
    """Parse and normalise a rational map in ``t``."""
    from .maps import RationalMap

    r = parse_ratfunc(text, ctx)
    return RationalMap(r.num, r.den)
