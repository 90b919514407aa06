"""Rational maps on the projective line, points of P^1 and Moebius changes of coordinate."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from ..errors import DegreeZero, ZeroDenominator
from ..exactnum.fields import QQ
from ..exactnum.forms import BiForm, form_resultant
from ..exactnum.poly import UniPoly, poly_gcd
from ..exactnum.ratfunc import RatFunc


class ProjPoint:
    """A point of P^1 over a context, stored in a canonical representative.

    Over ``QQ`` the pair is coprime integers with ``v >= 0`` (``(1, 0)`` for
    infinity); elsewhere it is ``(x, 1)`` or ``(1, 0)``.
    """

    __slots__ = ("ctx", "u", "v")

    def __init__(self, u, v=1, ctx=QQ):
        if ctx is QQ:
            u, v = QQ(u), QQ(v)
            if v == 0:
                if u == 0:
                    raise ValueError("(0, 0) is not a point of P^1")
                u, v = 1, 0
            else:
                fu, fv = Fraction(u), Fraction(v)
                den = math.lcm(fu.denominator, fv.denominator)
                a, b = int(fu * den), int(fv * den)
                g = math.gcd(a, b)
                a, b = a // g, b // g
                if b < 0:
                    a, b = -a, -b
                u, v = a, b
        else:
            u, v = ctx(u), ctx(v)
            if v == 0:
                if u == 0:
                    raise ValueError("(0, 0) is not a point of P^1")
                u, v = ctx.one, ctx.zero
            elif v != 1:
                u, v = u * ctx.inv(v), ctx.one
        self.ctx, self.u, self.v = ctx, u, v

    @classmethod
    def infinity(cls, ctx=QQ):
        return cls(1, 0, ctx)

    @classmethod
    def of(cls, x, ctx=QQ):
        if isinstance(x, ProjPoint):
            return x if x.ctx is ctx else ProjPoint(x.u, x.v, ctx)
        if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo")):
            return cls.infinity(ctx)
        if isinstance(x, str):
            from .parse import parse_scalar

            return cls(parse_scalar(x, ctx), 1, ctx)
        return cls(x, 1, ctx)

    @property
    def is_infinity(self):
        return self.v == 0

    @property
    def value(self):
        """Affine coordinate, or ``None`` at infinity."""
        if self.is_infinity:
            return None
        if self.ctx is QQ:
            return QQ.div(self.u, self.v)
        return self.u

    def over(self, ctx):
        return self if ctx is self.ctx else ProjPoint(self.u, self.v, ctx)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            try:
                other = ProjPoint.of(other, self.ctx)
            except (TypeError, ValueError):
                return NotImplemented
        if other.ctx is not self.ctx:
            try:
                other = other.over(self.ctx)
            except TypeError:
                return self.over(other.ctx) == other
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def render(self):
        if self.is_infinity:
            return "inf"
        return self.ctx.render(self.value)

    def __repr__(self):
        return f"ProjPoint({self.render()})"

    __str__ = render


class Mobius:
    """``t -> (a*t + b) / (c*t + d)`` with ``a*d - b*c != 0``."""

    __slots__ = ("ctx", "a", "b", "c", "d")

    def __init__(self, a, b, c, d, ctx=QQ):
        a, b, c, d = ctx(a), ctx(b), ctx(c), ctx(d)
        if a * d - b * c == 0:
            raise ValueError("singular Moebius transformation")
        self.ctx, self.a, self.b, self.c, self.d = ctx, a, b, c, d

    @classmethod
    def identity(cls, ctx=QQ):
        return cls(1, 0, 0, 1, ctx)

    @classmethod
    def affine(cls, lam, beta, ctx=QQ):
        """``t -> lam*t + beta``."""
        return cls(lam, beta, 0, 1, ctx)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_affine(self):
        return self.c == 0

    def inverse(self):
        return Mobius(self.d, -self.b, -self.c, self.a, self.ctx)

    def compose(self, other: "Mobius") -> "Mobius":
        """``self o other``."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.ctx,
        )

    def __call__(self, x):
        p = ProjPoint.of(x, self.ctx)
        return ProjPoint(self.a * p.u + self.b * p.v, self.c * p.u + self.d * p.v, self.ctx)

    def forms(self):
        x, y = BiForm.x(self.ctx), BiForm.y(self.ctx)
        return x * self.a + y * self.b, x * self.c + y * self.d

    def as_map(self):
        return RationalMap(UniPoly((self.b, self.a), self.ctx), UniPoly((self.d, self.c), self.ctx))

    def over(self, ctx):
        return self if ctx is self.ctx else Mobius(self.a, self.b, self.c, self.d, ctx)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        m1 = (self.a, self.b, self.c, self.d)
        m2 = (other.a, other.b, other.c, other.d)
        # equal as projective matrices: all 2x2 minors of the stacked pair vanish
        return all(m1[i] * m2[j] == m1[j] * m2[i] for i in range(4) for j in range(i + 1, 4))

    def __hash__(self):
        return 0

    def render(self):
        num = UniPoly((self.b, self.a), self.ctx).render()
        den = UniPoly((self.d, self.c), self.ctx).render()
        return num if den == "1" else f"({num})/({den})"

    def __repr__(self):
        return f"Mobius({self.render()!r})"


class FormPair:
    __slots__ = ("r", "F", "G")

    def __init__(self, r, F, G):
        self.r, self.F, self.G = r, F, G

    def __iter__(self):
        return iter((self.F, self.G))

    def __repr__(self):
        return f"FormPair(r={self.r}, F={self.F.render()!r}, G={self.G.render()!r})"


class RationalMap:
    """A normalised rational map ``f/g`` of degree ``d = max(deg f, deg g) >= 1``.

    Normalisation: ``gcd(f, g) = 1``; over ``QQ`` the pair has integer
    coefficients with joint content 1 and ``lc(g) > 0``; over an extension
    ``g`` is monic.  Homogeneous forms ``F(x, y) = y^d f(x/y)`` and ``G`` are
    built at construction; the resultant and iterate forms are cached lazily.
    """

    def __init__(self, f, g=None):
        if isinstance(f, RatFunc) and g is None:
            f, g = f.num, f.den
        if not isinstance(f, UniPoly):
            f = UniPoly((f,), g.ctx if isinstance(g, UniPoly) else QQ)
        if g is None:
            g = UniPoly._raw(f.ctx, (f.ctx.one,))
        elif not isinstance(g, UniPoly):
            g = UniPoly((g,), f.ctx)
        f, g = f._unify(g)
        if g.is_zero():
            raise ZeroDenominator("denominator is identically zero")
        h = poly_gcd(f, g)
        if h.degree > 0:
            f, g = f.exact_div(h), g.exact_div(h)
        d = max(f.degree, g.degree)
        if d < 1:
            raise DegreeZero("map reduces to a constant")
        ctx = f.ctx
        if ctx is QQ:
            coeffs = f.coeffs + g.coeffs
            den = reduce(math.lcm, (Fraction(c).denominator for c in coeffs), 1)
            fi = [int(c * den) for c in f.coeffs]
            gi = [int(c * den) for c in g.coeffs]
            cont = reduce(math.gcd, fi + gi, 0)
            if gi[-1] < 0:
                cont = -cont
            f = UniPoly._raw(QQ, [a // cont for a in fi])
            g = UniPoly._raw(QQ, [a // cont for a in gi])
        else:
            inv = ctx.inv(g.lc)
            f, g = f * inv, g * inv
        self.ctx = ctx
        self.f, self.g, self.d = f, g, d
        self.F = BiForm(d, f.coeffs, ctx)
        self.G = BiForm(d, g.coeffs, ctx)
        self._res = None
        self._iter_forms = [FormPair(0, BiForm.x(ctx), BiForm.y(ctx)), FormPair(1, self.F, self.G)]

    @classmethod
    def from_forms(cls, F: BiForm, G: BiForm):
        return cls(F.dehomogenize(), G.dehomogenize())

    @classmethod
    def parse(cls, text, ctx=QQ):
        from .parse import parse_map

        return parse_map(text, ctx)

    @classmethod
    def identity(cls, ctx=QQ):
        return cls(UniPoly.gen(ctx))

    # -- basic data ----------------------------------------------------------

    @property
    def resultant(self):
        if self._res is None:
            self._res = form_resultant(self.F, self.G)
        return self._res

    def ratfunc(self):
        return RatFunc(self.f, self.g, reduce=False)

    def over(self, ctx):
        if ctx is self.ctx:
            return self
        return RationalMap(self.f.over(ctx), self.g.over(ctx))

    @property
    def is_polynomial(self):
        return self.g.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        a, b = self.f._unify(other.g)
        c, e = self.g._unify(other.f)
        return (a * b - c * e).is_zero()

    def __hash__(self):
        return hash((self.d, self.f.degree, self.g.degree))

    def render(self):
        n = self.f.render()
        if self.g.degree == 0 and self.g.lc == 1:
            return n
        return f"({n})/({self.g.render()})"

    def __repr__(self):
        return f"RationalMap({self.render()!r})"

    __str__ = render

    # -- evaluation ------------------------------------------------------------

    def __call__(self, x):
        p = ProjPoint.of(x, self.ctx)
        return ProjPoint(self.F(p.u, p.v), self.G(p.u, p.v), self.ctx)

    evaluate = __call__

    def derivative(self) -> RatFunc:
        return RatFunc(self.f.derivative() * self.g - self.f * self.g.derivative(), self.g * self.g)

    # -- composition -------------------------------------------------------------

    def compose(self, other: "RationalMap") -> "RationalMap":
        """``self o other``."""
        return RationalMap.from_forms(
            self.F.substitute(other.F, other.G), self.G.substitute(other.F, other.G)
        )

    def iterate(self, n: int) -> "RationalMap":
        if n < 0:
            raise ValueError("negative iterate")
        if n == 0:
            return RationalMap.identity(self.ctx)
        return RationalMap.from_forms(*self.iterate_forms(n))

    def iterate_forms(self, r: int) -> FormPair:
        """``F_r, G_r`` with ``F_0 = x``, ``G_0 = y`` and ``F_{r+1} = F(F_r, G_r)``."""
        if r < 0:
            raise ValueError("negative iterate")
        cache = self._iter_forms
        while len(cache) <= r:
            prev = cache[-1]
            cache.append(
                FormPair(len(cache), self.F.substitute(prev.F, prev.G), self.G.substitute(prev.F, prev.G))
            )
        return cache[r]

    def conjugate(self, sigma: Mobius) -> "RationalMap":
        """``sigma^-1 o self o sigma``."""
        sigma = sigma.over(self.ctx) if sigma.ctx is not self.ctx else sigma
        P, Q = sigma.forms()
        A, B = self.F.substitute(P, Q), self.G.substitute(P, Q)
        s = sigma
        return RationalMap.from_forms(A * s.d - B * s.b, A * (-s.c) + B * s.a)

    def delta_form(self, delta: int) -> BiForm:
        """Primitive part of ``y*F_delta - x*G_delta``; degree ``d^delta + 1``."""
        if delta < 1:
            raise ValueError("delta must be positive")
        Fd, Gd = self.iterate_forms(delta)
        x, y = BiForm.x(self.ctx), BiForm.y(self.ctx)
        return (y * Fd - x * Gd).primitive()

    def wronskian_form(self) -> BiForm:
        """``f'g - fg'`` homogenised at degree ``2d - 2``; roots are the critical points."""
        w = self.f.derivative() * self.g - self.f * self.g.derivative()
        return BiForm.homogenize(w, 2 * self.d - 2)


def conjugate(phi: RationalMap, sigma: Mobius) -> RationalMap:
    return phi.conjugate(sigma)


def compose(phi: RationalMap, psi: RationalMap) -> RationalMap:
    return phi.compose(psi)


def iterate(phi: RationalMap, n: int) -> RationalMap:
    return phi.iterate(n)


def iterate_forms(phi: RationalMap, r: int) -> FormPair:
    return phi.iterate_forms(r)


def delta_form(phi: RationalMap, delta: int) -> BiForm:
    return phi.delta_form(delta)


def evaluate(phi: RationalMap, x) -> ProjPoint:
    return phi(x)
