from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynlab.errors import DegreeMismatch, ZeroInversion
from dynlab.exactnum import (
    QQ,
    BiForm,
    Extension,
    Split,
    UniPoly,
    alg_invert,
    poly_gcd,
    poly_radical,
    poly_resultant,
    poly_xgcd,
    radical_divides,
    split_branches,
)

t = UniPoly.gen()
x, y = BiForm.x(), BiForm.y()


def P(*coeffs):
    return UniPoly(list(coeffs))


small = st.integers(-6, 6)


@st.composite
def polys(draw, max_deg=4):
    deg = draw(st.integers(0, max_deg))
    c = draw(st.lists(small, min_size=deg + 1, max_size=deg + 1))
    if c[-1] == 0:
        c[-1] = 1
    return UniPoly(c)


def test_rationals_normalize():
    assert QQ(Fraction(6, -4)) == Fraction(-3, 2)
    assert QQ(Fraction(4, 2)) == 2 and isinstance(QQ(Fraction(4, 2)), int)
    assert QQ.div(1, 3) == Fraction(1, 3)


def test_zero_polynomial_degree_is_bottom():
    z = UniPoly([])
    assert z.is_zero()
    assert z.degree < -1000 or z.degree == float("-inf")
    assert UniPoly([0, 0, 0]).is_zero()


def test_gcd_examples():
    p = 2 * t**2 + 4
    assert poly_gcd(p, UniPoly([])) == p.monic()
    assert poly_gcd(t**2 - 3 * t + 2, t**2 - 4 * t + 3) == t - 1
    assert poly_gcd(t**2 + 1, t**2 + t) == UniPoly([1])


def test_resultant_examples():
    assert poly_resultant(t - 1, t - 2) == 1
    a = t**4 + 2 * t**3 + t**2 - 1
    b = t**4 + 4 * t**3 + 5 * t**2 + 2 * t + 1
    assert poly_resultant(a, b) == 16
    p = t**3 - 2 * t + 7
    assert poly_resultant(p, p) == 0


def test_resultant_sign_convention():
    # ascending-column Sylvester layout: Res(a, b) = (-1)^(deg a deg b) prod b(roots of a) for monic a
    a = UniPoly.from_roots([1, 2, -5])
    b = 2 * t
    assert poly_resultant(a, b) == -(b(1) * b(2) * b(-5))


def test_radical_examples():
    assert poly_radical(t**2) == t
    assert poly_radical((t - 1) ** 2 * (t + 2)) == ((t - 1) * (t + 2)).monic()
    assert poly_radical(t**4 - 2 * t**2 + 1) == t**2 - 1


def test_radical_divides_examples():
    assert radical_divides((t - 1) ** 2 * (t - 2), (t - 1) * (t - 2) * (t - 3))
    assert not radical_divides((t - 1) * (t - 2), (t - 1) ** 2)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys(3))
def test_gcd_divides_and_is_greatest(a0, b0, g):
    if g.is_zero() or (a0.is_zero() and b0.is_zero()):
        return
    a, b = g * a0, g * b0
    d = poly_gcd(a, b)
    assert d.divides(a) and d.divides(b)
    assert g.divides(d)


@settings(max_examples=60, deadline=None)
@given(polys(3), polys(3), polys(3))
def test_resultant_multiplicative(a, b, c):
    if min(a.degree, b.degree, c.degree) < 0:
        return
    assert poly_resultant(a * b, c) == poly_resultant(a, c) * poly_resultant(b, c)


@settings(max_examples=60, deadline=None)
@given(polys(4))
def test_radical_is_squarefree(p):
    if p.degree < 1:
        return
    r = poly_radical(p)
    assert poly_gcd(r, r.derivative()).degree == 0
    assert radical_divides(p, r) and radical_divides(r, p)


@settings(max_examples=40, deadline=None)
@given(polys(4), polys(4))
def test_xgcd_bezout(a, b):
    if a.is_zero() or b.is_zero():
        return
    g, s, u = poly_xgcd(a, b)
    assert s * a + u * b == g == poly_gcd(a, b)


# -- extensions ---------------------------------------------------------------


def test_invert_in_field():
    K = Extension(QQ, "th", t**2 + 1)
    th = K.gen
    assert alg_invert(th) == -th
    W = Extension(QQ, "w", t**2 + t + 1)
    w = W.gen
    assert alg_invert(w) == -1 - w


def test_invert_splits_reducible_modulus():
    K = Extension(QQ, "th", t**2 - 1)
    r = alg_invert(K.gen - 1)
    assert isinstance(r, Split)
    assert {r.m1, r.m2} == {t - 1, t + 1}
    assert r.m1 * r.m2 == K.modulus


def test_invert_zero_raises():
    K = Extension(QQ, "th", t**2 + 1)
    with pytest.raises(ZeroInversion):
        alg_invert(K.zero)


def test_split_branches_cover_modulus():
    K = Extension(QQ, "th", (t**2 - 2) * (t - 3))
    e = K.from_poly(t - 3)

    def fn(ctx):
        v = ctx(e)
        return None if ctx.is_zero(v) else ctx.inv(v)

    branches = split_branches(fn, K)
    prod = UniPoly([1])
    for c, val in branches:
        prod = prod * c.modulus
        if val is not None:
            assert c(e) * val == c.one
    assert prod == K.modulus
    assert sorted(val is None for _, val in branches) == [False, True]


# -- binary forms --------------------------------------------------------------


def test_biform_basics():
    xy = x * y
    assert xy.degree == 2 and xy.coeffs == (0, 1, 0)
    assert (2 * x**2 + 4 * y**2).content() == 2
    assert (x + y).substitute(x**2, y**2) == x**2 + y**2


def test_biform_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        x + x**2


def test_biform_degrees_multiply():
    F = x**2 - 2 * x * y + 2 * y**2
    G = y**2
    assert (F * G).degree == 4
    assert F.substitute(F, G).degree == 4
    assert (6 * F).primitive().content() == 1
