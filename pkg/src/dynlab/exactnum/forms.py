"""Homogeneous bivariate forms in ``x`` and ``y``.

``coeffs[i]`` is the coefficient of ``x^i * y^(degree - i)``, so the list is
exactly the coefficient list of the dehomogenisation ``F(t, 1)``.  A form whose
top coefficients vanish is divisible by a power of ``y``; that power is the
multiplicity of the point at infinity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from ..errors import DegreeMismatch
from .fields import QQ
from .poly import (
    UniPoly,
    poly_gcd,
    poly_radical,
    poly_resultant,
    render_terms,
    determinant,
    sylvester_matrix,
)


class BiForm:
    __slots__ = ("ctx", "degree", "coeffs")

    def __init__(self, degree, coeffs, ctx=QQ):
        coeffs = [ctx(c) for c in coeffs]
        if len(coeffs) > degree + 1:
            if any(c != 0 for c in coeffs[degree + 1:]):
                raise DegreeMismatch(f"{len(coeffs)} coefficients for a degree {degree} form")
            coeffs = coeffs[: degree + 1]
        coeffs += [ctx.zero] * (degree + 1 - len(coeffs))
        self.ctx = ctx
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, ctx, degree, coeffs):
        f = cls.__new__(cls)
        f.ctx, f.degree, f.coeffs = ctx, degree, tuple(coeffs)
        return f

    @classmethod
    def x(cls, ctx=QQ):
        return cls._raw(ctx, 1, (ctx.zero, ctx.one))

    @classmethod
    def y(cls, ctx=QQ):
        return cls._raw(ctx, 1, (ctx.one, ctx.zero))

    @classmethod
    def homogenize(cls, p: UniPoly, degree=None):
        degree = p.degree if degree is None else degree
        if p.degree > degree:
            raise DegreeMismatch(f"cannot homogenise degree {p.degree} at degree {degree}")
        return cls(degree, p.coeffs, p.ctx)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def dehomogenize(self) -> UniPoly:
        """``F(t, 1)`` as a polynomial in ``t``."""
        return UniPoly._raw(self.ctx, self.coeffs)

    def dehomogenize_x(self) -> UniPoly:
        """``F(1, s)``: the chart around the point at infinity."""
        return UniPoly._raw(self.ctx, self.coeffs[::-1])

    def y_valuation(self):
        """Exponent of the largest power of ``y`` dividing the form."""
        if self.is_zero():
            return math.inf
        return self.degree - self.dehomogenize().degree

    def x_valuation(self):
        if self.is_zero():
            return math.inf
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BiForm):
            if other == 0:
                return self
            raise DegreeMismatch("only forms of equal degree can be added")
        if other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise DegreeMismatch(f"adding forms of degree {self.degree} and {other.degree}")
        return BiForm._raw(self.ctx, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return BiForm._raw(self.ctx, self.degree, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiForm):
            c = self.ctx(other)
            return BiForm._raw(self.ctx, self.degree, [a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        out = [self.ctx.zero] * (self.degree + other.degree + 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return BiForm._raw(self.ctx, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = BiForm._raw(self.ctx, 0, (self.ctx.one,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __call__(self, u, v):
        """Evaluate ``F(u, v)``."""
        vp = [self.ctx.one]
        for _ in range(self.degree):
            vp.append(vp[-1] * v)
        acc = self.ctx.zero
        k = self.degree
        for i in range(k, -1, -1):
            acc = acc * u + self.coeffs[i] * vp[k - i]
        return acc

    def substitute(self, P: "BiForm", Q: "BiForm") -> "BiForm":
        """``F(P, Q)`` for a pair of forms of a common degree ``e``."""
        if P.degree != Q.degree:
            raise DegreeMismatch("substituted forms must share a degree")
        k = self.degree
        ppow = [BiForm._raw(P.ctx, 0, (P.ctx.one,))]
        qpow = [BiForm._raw(Q.ctx, 0, (Q.ctx.one,))]
        for _ in range(k):
            ppow.append(ppow[-1] * P)
            qpow.append(qpow[-1] * Q)
        acc = BiForm._raw(P.ctx, k * P.degree, (P.ctx.zero,) * (k * P.degree + 1))
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + (ppow[i] * qpow[k - i]) * c
        return acc

    def derivative_x(self):
        if self.degree == 0:
            return BiForm._raw(self.ctx, 0, (self.ctx.zero,))
        return BiForm._raw(self.ctx, self.degree - 1, [i * c for i, c in enumerate(self.coeffs)][1:])

    def derivative_y(self):
        if self.degree == 0:
            return BiForm._raw(self.ctx, 0, (self.ctx.zero,))
        k = self.degree
        return BiForm._raw(self.ctx, k - 1, [(k - i) * c for i, c in enumerate(self.coeffs)][:-1])

    # -- content over the integers ---------------------------------------------

    def content(self):
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if self.ctx is not QQ:
            raise TypeError("content is defined for rational forms")
        nums = reduce(math.gcd, (Fraction(c).numerator for c in self.coeffs), 0)
        dens = reduce(math.lcm, (Fraction(c).denominator for c in self.coeffs), 1)
        return QQ(Fraction(nums, dens)) if nums else 0

    def primitive(self):
        """Integer form with content 1 (sign kept); monic in the top term elsewhere."""
        if self.is_zero():
            return self
        if self.ctx is not QQ:
            lead = next(c for c in reversed(self.coeffs) if c != 0)
            inv = self.ctx.inv(lead)
            return BiForm._raw(self.ctx, self.degree, [c * inv for c in self.coeffs])
        c = self.content()
        return BiForm._raw(QQ, self.degree, [QQ.div(a, c) for a in self.coeffs])

    def over(self, ctx):
        return self if ctx is self.ctx else BiForm(self.degree, self.coeffs, ctx)

    def render(self):
        def mono(i):
            k = self.degree - i
            parts = []
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if k:
                parts.append("y" if k == 1 else f"y^{k}")
            return "*".join(parts)

        return render_terms(list(enumerate(self.coeffs)), self.ctx, mono)

    def __repr__(self):
        return f"BiForm({self.render()!r}, degree={self.degree})"

    __str__ = render


def form_gcd(F: BiForm, G: BiForm) -> BiForm:
    """Gcd of two nonzero forms, normalised like :meth:`BiForm.primitive`."""
    v = min(F.y_valuation(), G.y_valuation())
    g = poly_gcd(F.dehomogenize(), G.dehomogenize())
    return BiForm.homogenize(g, g.degree + v).primitive()


def form_radical(F: BiForm) -> BiForm:
    """Product of the distinct linear factors of ``F`` (over an algebraic closure)."""
    r = poly_radical(F.dehomogenize())
    extra = 1 if F.y_valuation() > 0 else 0
    return BiForm.homogenize(r, r.degree + extra).primitive()


def form_divides(A: BiForm, B: BiForm) -> bool:
    if B.is_zero():
        return True
    if A.y_valuation() > B.y_valuation():
        return False
    return A.dehomogenize().divides(B.dehomogenize())


def form_exact_div(A: BiForm, B: BiForm) -> BiForm:
    q = A.dehomogenize().exact_div(B.dehomogenize())
    return BiForm(A.degree - B.degree, q.coeffs, A.ctx)


def form_resultant(F: BiForm, G: BiForm):
    """Resultant of two forms with their formal degrees.

    Uses the same Sylvester layout as :func:`poly_resultant`, so when both top
    coefficients are nonzero the two agree.
    """
    if F.degree == 0 and G.degree == 0:
        return F.ctx.one
    return determinant(sylvester_matrix(F.coeffs, G.coeffs), F.ctx)


def distinct_linear_factor_count(F: BiForm) -> int:
    """Number of distinct linear factors of ``F`` over the algebraic closure."""
    if F.is_zero():
        raise ValueError("zero form")
    p = F.dehomogenize()
    finite = poly_radical(p).degree if p.degree > 0 else 0
    return finite + (1 if F.y_valuation() > 0 else 0)


__all__ = [
    "BiForm",
    "form_gcd",
    "form_radical",
    "form_divides",
    "form_exact_div",
    "form_resultant",
    "distinct_linear_factor_count",
    "poly_resultant",
]
