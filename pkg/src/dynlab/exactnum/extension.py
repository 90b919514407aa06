"""Simple extensions ``K[theta]/(m)`` with dynamic evaluation.

The modulus ``m`` is only a *candidate* minimal polynomial: it may be
reducible.  Arithmetic never needs to know.  When an inversion or a zero test
meets a zero divisor the extended gcd exposes a factor ``m = m1 * m2`` and
``SplitRequired`` is raised; callers rerun in the two child contexts
(see :func:`dynlab.exactnum.branches.split_branches`).

Contexts form towers through ``base`` and lineages through ``parent``: a child
produced by splitting (or by rebasing onto a split base) can coerce any element
of its ancestors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import SplitRequired, ZeroInversion
from .fields import QQ
from .poly import UniPoly, poly_gcd, poly_xgcd


@dataclass(frozen=True)
class Split:
    """Outcome of a failed inversion: a nontrivial factorisation of the modulus."""

    m1: UniPoly
    m2: UniPoly


class Extension:
    def __init__(self, base, name, modulus, parent=None):
        if not isinstance(modulus, UniPoly):
            modulus = UniPoly(modulus, base)
        else:
            modulus = modulus.over(base)
        if modulus.degree < 1:
            raise ValueError("extension modulus must have degree >= 1")
        self.base = base
        self.name = name
        self.modulus = modulus.monic()
        self.parent = parent
        self.n = self.modulus.degree
        self._m = self.modulus.coeffs
        self.absolute_degree = self.n * base.absolute_degree
        self.zero = AlgElem(self, (base.zero,) * self.n)
        self.one = self._embed(base.one)

    # -- element construction ----------------------------------------------

    @property
    def gen(self):
        if self.n == 1:
            return self._embed(-self._m[0])
        return AlgElem(self, (self.base.zero, self.base.one) + (self.base.zero,) * (self.n - 2))

    def _embed(self, b):
        return AlgElem(self, (b,) + (self.base.zero,) * (self.n - 1))

    def element(self, coords):
        return self._reduce([self.base(c) for c in coords])

    def from_poly(self, p: UniPoly):
        return self._reduce(list(p.over(self.base).coeffs))

    def __call__(self, x):
        if isinstance(x, AlgElem):
            src = x.ctx
            if src is self:
                return x
            if self.descends_from(src):
                return self._reduce([self.base(c) for c in x.coords])
        return self._embed(self.base(x))

    def descends_from(self, other):
        p = self
        while p is not None:
            if p is other:
                return True
            p = p.parent
        return False

    def _reduce(self, c):
        n, m = self.n, self._m
        for i in range(len(c) - 1, n - 1, -1):
            q = c[i]
            if q != 0:
                for j in range(n):
                    c[i - n + j] = c[i - n + j] - q * m[j]
        c = c[:n]
        if len(c) < n:
            c = c + [self.base.zero] * (n - len(c))
        return AlgElem(self, tuple(c))

    # -- field-like operations ---------------------------------------------

    def is_zero(self, a):
        """Structural zero test (exact in every lineage)."""
        return all(c == 0 for c in self(a).coords)

    def zero_test(self, a):
        """Zero test that splits when ``a`` is a zero divisor."""
        a = self(a)
        if a.is_zero():
            return True
        g = poly_gcd(a.rep(), self.modulus)
        if g.degree == 0:
            return False
        raise SplitRequired(self, g, self.modulus.exact_div(g))

    def is_unit(self, a):
        return not self.zero_test(a)

    def invert(self, a):
        """Inverse of ``a`` or a :class:`Split` describing the failure."""
        a = self(a)
        if a.is_zero():
            raise ZeroInversion(f"inverse of zero in {self.name}")
        g, s, _ = poly_xgcd(a.rep(), self.modulus)
        if g.degree > 0:
            return Split(g, self.modulus.exact_div(g))
        return self.from_poly(s)

    def inv(self, a):
        r = self.invert(a)
        if isinstance(r, Split):
            raise SplitRequired(self, r.m1, r.m2)
        return r

    def div(self, a, b):
        return self(a) * self.inv(b)

    def split(self, m1, m2):
        return (
            Extension(self.base, self.name, m1, parent=self),
            Extension(self.base, self.name, m2, parent=self),
        )

    def rebase(self, new_base):
        """Same generator over a refined base context."""
        return Extension(new_base, self.name, self.modulus.coeffs, parent=self)

    def tower(self):
        return self.base.tower() + [self]

    def render(self, a):
        return self(a).rep().render(self.name)

    def minpoly_text(self):
        return self.modulus.render(self.name)

    def __repr__(self):
        return f"Extension({self.name}: {self.minpoly_text()} over {self.base!r})"


def _root_context(ctx):
    while ctx.parent is not None:
        ctx = ctx.parent
    return ctx


class _Defer(Exception):
    """Operand belongs to another algebra (polynomials); let it handle the operation."""


class AlgElem:
    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = coords

    def rep(self):
        return UniPoly._raw(self.ctx.base, self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def _pair(self, other):
        if not isinstance(other, (AlgElem, int, Fraction)):
            raise _Defer
        if isinstance(other, AlgElem) and other.ctx is not self.ctx:
            try:
                return self, self.ctx(other)
            except TypeError:
                o = other.ctx(self)
                return o, other
        return self, self.ctx(other)

    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except _Defer:
            return NotImplemented
        return AlgElem(a.ctx, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.ctx, tuple(-x for x in self.coords))

    def __sub__(self, other):
        try:
            a, b = self._pair(other)
        except _Defer:
            return NotImplemented
        return AlgElem(a.ctx, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ctx.base(other)
            return AlgElem(self.ctx, tuple(x * c for x in self.coords))
        try:
            a, b = self._pair(other)
        except _Defer:
            return NotImplemented
        ctx = a.ctx
        n = ctx.n
        out = [ctx.base.zero] * (2 * n - 1)
        for i, x in enumerate(a.coords):
            if x == 0:
                continue
            for j, y in enumerate(b.coords):
                out[i + j] = out[i + j] + x * y
        return ctx._reduce(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            a, b = self._pair(other)
        except _Defer:
            return NotImplemented
        return a * a.ctx.inv(b)

    def __rtruediv__(self, other):
        return self.ctx(other) * self.ctx.inv(self)

    def __pow__(self, k):
        if k < 0:
            return self.ctx.inv(self) ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        try:
            a, b = self._pair(other)
        except (TypeError, _Defer):
            return NotImplemented
        return a.coords == b.coords

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if all(c == 0 for c in self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.coords, _root_context(self.ctx).name))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"AlgElem({self.ctx.render(self)!r} in {self.ctx.name})"

    def __str__(self):
        return self.ctx.render(self)


def alg_invert(e: AlgElem):
    """Inverse of ``e`` in its context, or ``Split(m1, m2)`` if ``e`` is a zero divisor.

    >>> K = Extension(QQ, "th", [1, 0, 1])
    >>> str(alg_invert(K.gen))
    '-th'
    """
    return e.ctx.invert(e)


def extension_from_text(name, modulus_text, base=QQ):
    """Build ``base[name]/(modulus)`` from a rendered polynomial such as ``w^2+w+1``."""
    from ..ratmap.parse import parse_polynomial

    return Extension(base, name, parse_polynomial(modulus_text, var=name, ctx=base))
