"""Rational functions ``num/den`` in one variable over a coefficient context."""

from __future__ import annotations

from ..errors import ZeroDenominator
from .fields import QQ
from .poly import UniPoly, poly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, UniPoly):
            ctx = den.ctx if isinstance(den, UniPoly) else QQ
            num = UniPoly((num,), ctx)
        if den is None:
            den = UniPoly._raw(num.ctx, (num.ctx.one,))
        elif not isinstance(den, UniPoly):
            den = UniPoly((den,), num.ctx)
        num, den = num._unify(den)
        if den.is_zero():
            raise ZeroDenominator("denominator is identically zero")
        if reduce:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            inv = den.ctx.inv(den.lc)
            if den.lc != 1:
                num, den = num * inv, den * inv
        self.num, self.den = num, den

    @property
    def ctx(self):
        return self.num.ctx

    @classmethod
    def gen(cls, ctx=QQ):
        return cls(UniPoly.gen(ctx))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return RatFunc(UniPoly._raw(self.ctx, ()) + other)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDenominator("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num**k, self.den**k, reduce=False)

    def __eq__(self, other):
        o = self._coerce(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """``self(inner(t))`` via homogeneous evaluation of both numerator and denominator."""
        inner = self._coerce(inner)
        d = max(self.num.degree, self.den.degree, 0)
        a, b = inner.num, inner.den
        bp = [UniPoly._raw(b.ctx, (b.ctx.one,))]
        for _ in range(d):
            bp.append(bp[-1] * b)

        n = _homog_eval(self.num, a, bp, d)
        m = _homog_eval(self.den, a, bp, d)
        return RatFunc(n, m)

    def derivative(self):
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return self.compose(x)
        return self.ctx.div(self.num(x), self.den(x)) if self.ctx is QQ else self.num(x) / self.den(x)

    def render(self, var="t"):
        n = self.num.render(var)
        if self.den.degree == 0 and self.den.lc == 1:
            return n
        return f"({n})/({self.den.render(var)})"

    def __repr__(self):
        return f"RatFunc({self.render()!r})"


def _homog_eval(p, a, bp, d):
    """``sum p_i a^i b^(d-i)`` with ``bp[k] = b^k``."""
    acc = UniPoly._raw(a.ctx, ())
    apow = UniPoly._raw(a.ctx, (a.ctx.one,))
    for i, c in enumerate(p.coeffs):
        if c != 0:
            acc = acc + apow * bp[d - i] * c
        apow = apow * a
    return acc
