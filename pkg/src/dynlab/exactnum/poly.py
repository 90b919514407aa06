"""Dense univariate polynomials over a coefficient context.

Coefficients are stored lowest degree first.  The zero polynomial has degree
``-inf`` so that ``deg(p*q) == deg p + deg q`` holds without special cases.

Over ``QQ`` the gcd, radical and exact-division routines clear denominators and
work with primitive integer polynomials (subresultant PRS); over an extension
context plain Euclid is used and any zero-divisor met on the way surfaces as
``SplitRequired``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from ..errors import DynlabError, ZeroInversion
from .fields import QQ

NEG_INF = -math.inf


class UniPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, coeffs=(), ctx=QQ):
        c = [ctx(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, ctx, coeffs):
        p = cls.__new__(cls)
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        p.ctx = ctx
        p.coeffs = tuple(c)
        return p

    @classmethod
    def gen(cls, ctx=QQ):
        return cls._raw(ctx, (ctx.zero, ctx.one))

    @classmethod
    def constant(cls, c, ctx=QQ):
        return cls((c,), ctx)

    @classmethod
    def monomial(cls, k, c=1, ctx=QQ):
        return cls([0] * k + [c], ctx)

    @classmethod
    def from_roots(cls, roots, ctx=QQ):
        t = cls.gen(ctx)
        return reduce(lambda acc, r: acc * (t - r), roots, cls.constant(1, ctx))

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ctx.zero

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if self.is_constant():
            return self.coeff(0) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.render()!r})"

    def __str__(self):
        return self.render()

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, UniPoly):
            if other.ctx is self.ctx:
                return other
            return UniPoly(other.coeffs, self.ctx)
        return UniPoly._raw(self.ctx, (self.ctx(other),))

    def _unify(self, other):
        """Both operands over one context, promoting ``self`` when needed."""
        try:
            return self, self._lift(other)
        except TypeError:
            ctx = other.ctx
            o = other if isinstance(other, UniPoly) else UniPoly._raw(ctx, (other,))
            return self.over(ctx), o

    def __add__(self, other):
        s, o = self._unify(other)
        a, b = s.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return UniPoly._raw(s.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(self.ctx, [-x for x in self.coeffs])

    def __sub__(self, other):
        s, o = self._unify(other)
        return s + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        s, o = self._unify(other)
        if not isinstance(other, UniPoly):
            c = o.lc
            return UniPoly._raw(s.ctx, [x * c for x in s.coeffs])
        a, b = s.coeffs, o.coeffs
        if not a or not b:
            return UniPoly._raw(s.ctx, ())
        out = [s.ctx.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly._raw(s.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly._raw(self.ctx, (self.ctx.one,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return self * c

    def divmod(self, other):
        """Long division; needs the leading coefficient of ``other`` invertible."""
        o = self._lift(other)
        if o.is_zero():
            raise ZeroInversion("polynomial division by zero")
        inv = self.ctx.inv(o.lc)
        r = list(self.coeffs)
        db = o.degree
        if len(r) - 1 < db:
            return UniPoly._raw(self.ctx, ()), self
        q = [self.ctx.zero] * (len(r) - db)
        b = o.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            c = c * inv
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = r[i - db + j] - c * b[j]
        return UniPoly._raw(self.ctx, q), UniPoly._raw(self.ctx, r[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        o = self._lift(other)
        if self.ctx is QQ and len(o.coeffs) > 1:
            return _qq_exact_div(self, o)
        q, r = self.divmod(o)
        if not r.is_zero():
            raise DynlabError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        """True iff ``self`` divides ``other``."""
        return (self._lift(other) % self).is_zero()

    # -- evaluation and calculus ----------------------------------------------

    def __call__(self, x):
        if isinstance(x, UniPoly):
            return self.compose(x)
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q):
        acc = UniPoly._raw(q.ctx, ())
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def derivative(self):
        return UniPoly._raw(self.ctx, [i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        lc = self.lc
        if lc == 1:
            return self
        inv = self.ctx.inv(lc)
        return UniPoly._raw(self.ctx, [c * inv for c in self.coeffs])

    def over(self, ctx):
        if ctx is self.ctx:
            return self
        return UniPoly(self.coeffs, ctx)

    def reverse(self, degree=None):
        """Coefficient reversal ``t^degree * p(1/t)``."""
        n = self.degree if degree is None else degree
        if self.is_zero():
            return self
        c = list(self.coeffs) + [self.ctx.zero] * (n + 1 - len(self.coeffs))
        return UniPoly._raw(self.ctx, c[::-1])

    def valuation(self):
        """Largest ``k`` with ``t^k`` dividing ``self``; ``inf`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return math.inf

    def root_multiplicity(self, r):
        """Order of vanishing at a point of the coefficient context."""
        if self.is_zero():
            return math.inf
        lin = UniPoly._raw(self.ctx, (-self.ctx(r), self.ctx.one))
        k, p = 0, self
        while True:
            q, rem = p.divmod(lin)
            if not rem.is_zero():
                return k
            k, p = k + 1, q

    # -- integer views (QQ only) ----------------------------------------------

    def denominator_lcm(self):
        return reduce(math.lcm, (Fraction(c).denominator for c in self.coeffs), 1)

    def integer_coeffs(self):
        """Coefficients scaled to integers with content 1 and positive lc."""
        if self.ctx is not QQ:
            raise TypeError("integer view is only defined over QQ")
        return _zz_primitive(_qq_to_zz(self.coeffs))

    def primitive(self):
        """Primitive integer associate over QQ; monic associate elsewhere."""
        if self.ctx is not QQ:
            return self.monic()
        return UniPoly._raw(QQ, self.integer_coeffs())

    # -- rendering ------------------------------------------------------------

    def render(self, var="t"):
        return render_terms(
            [(i, c) for i, c in enumerate(self.coeffs)], self.ctx, lambda i: _mono(var, i)
        )


def _mono(var, i):
    if i == 0:
        return ""
    return var if i == 1 else f"{var}^{i}"


def render_terms(terms, ctx, mono):
    """Render ``[(key, coeff)]`` highest first as ``a*m + b*m' - ...``."""
    parts = []
    for key, c in sorted(terms, key=lambda kc: kc[0], reverse=True):
        if c == 0:
            continue
        m = mono(key)
        s = ctx.render(c)
        negative = False
        compound = not _is_simple_scalar(s)
        if not compound and s.startswith("-"):
            negative, s = True, s[1:]
        if compound:
            s = f"({s})"
        if m:
            if s == "1":
                body = m
            else:
                body = f"{s}*{m}"
        else:
            body = s
        parts.append(("-" if negative else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _is_simple_scalar(s):
    body = s[1:] if s.startswith("-") else s
    return " + " not in body and " - " not in body


# ---------------------------------------------------------------------------
# integer polynomial kernels (lists of int, lowest degree first)
# ---------------------------------------------------------------------------


def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _qq_to_zz(coeffs):
    den = reduce(math.lcm, (Fraction(c).denominator for c in coeffs), 1)
    if den == 1:
        return [int(c) for c in coeffs]
    return [int(c * den) for c in coeffs]


def _zz_content(c):
    return reduce(math.gcd, c, 0)


def _zz_primitive(c):
    c = _strip(list(c))
    if not c:
        return c
    g = _zz_content(c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c] if g != 1 else c


def _zz_prem(a, b):
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        r.pop()
        _strip(r)
        e -= 1
    if e > 0 and r:
        f = lb**e
        r = [x * f for x in r]
    return r


def _zz_gcd(a, b):
    """Primitive gcd of two integer polynomials via the subresultant PRS."""
    a, b = _strip(list(a)), _strip(list(b))
    if not a:
        return _zz_primitive(b)
    if not b:
        return _zz_primitive(a)
    if len(a) < len(b):
        a, b = b, a
    a, b = _zz_primitive(a), _zz_primitive(b)
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _zz_prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return [1]
        div = g * h**delta
        a, b = b, [x // div for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    return _zz_primitive(b)


def _zz_exact_div(a, b):
    """Quotient of integer polynomials known to divide exactly over QQ."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return None
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        qc, rem = divmod(c, lb)
        if rem:
            return None
        q[i - db] = qc
        for j in range(db + 1):
            r[i - db + j] -= qc * b[j]
    if any(r[:db]):
        return None
    return q


def _qq_exact_div(p, d):
    if p.is_zero():
        return p
    pa = _qq_to_zz(p.coeffs)
    scale_p = Fraction(p.lc) / pa[-1] if pa else Fraction(1)
    da = _qq_to_zz(d.coeffs)
    scale_d = Fraction(d.lc) / da[-1]
    q = _zz_exact_div(pa, da)
    if q is None:
        # The integer quotient can be non-integral when d is not primitive.
        g = _zz_content(da)
        q = _zz_exact_div(pa, [x // g for x in da]) if g > 1 else None
        if q is None:
            raise DynlabError(f"{d} does not divide {p}")
        scale_d *= g
    s = scale_p / scale_d
    return UniPoly._raw(QQ, [QQ(x * s) for x in q])


# ---------------------------------------------------------------------------
# gcd, resultant, radical
# ---------------------------------------------------------------------------


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor; ``gcd(a, 0) == monic(a)``.

    >>> t = UniPoly.gen()
    >>> poly_gcd(t**2 - 3*t + 2, t**2 - 4*t + 3).render()
    't - 1'
    """
    b = a._lift(b)
    if a.ctx is QQ:
        if a.is_zero() and b.is_zero():
            return a
        g = _zz_gcd(_qq_to_zz(a.coeffs), _qq_to_zz(b.coeffs))
        return UniPoly._raw(QQ, g).monic()
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly):
    """``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    b = a._lift(b)
    ctx = a.ctx
    one = UniPoly._raw(ctx, (ctx.one,))
    zero = UniPoly._raw(ctx, ())
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = ctx.inv(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def sylvester_matrix(a_coeffs, b_coeffs):
    """Sylvester matrix with ascending-power columns, a-block above b-block.

    ``a_coeffs``/``b_coeffs`` are full coefficient lists (lowest first) whose
    lengths fix the formal degrees ``m`` and ``n``.
    """
    m, n = len(a_coeffs) - 1, len(b_coeffs) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a_coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b_coeffs) + [0] * (size - n - 1 - i))
    return rows


def determinant(rows, ctx):
    n = len(rows)
    if n == 0:
        return ctx.one
    if ctx is QQ:
        return _qq_det(rows)
    m = [[ctx(x) for x in row] for row in rows]
    det = ctx.one
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return ctx.zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        inv = ctx.inv(m[k][k])
        det = det * m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f == 0:
                continue
            for j in range(k, n):
                m[i][j] = m[i][j] - f * m[k][j]
    return det


def _qq_det(rows):
    scale = Fraction(1)
    m = []
    for row in rows:
        den = reduce(math.lcm, (Fraction(x).denominator for x in row), 1)
        scale /= den
        m.append([int(x * den) for x in row])
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        mkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * mkk - mik * row_k[j]) // prev
        prev = mkk
    return QQ(sign * m[n - 1][n - 1] * scale)


def poly_resultant(a: UniPoly, b: UniPoly):
    """Resultant as the Sylvester determinant with ascending-power columns.

    With this layout the value equals the textbook ``Res(b, a)``, i.e.
    ``(-1)**(deg a * deg b)`` times the more common ``Res(a, b)``.  The choice
    keeps ``Res(t - 1, t - 2) == 1`` and the value is multiplicative in each
    argument.
    """
    b = a._lift(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant needs nonzero polynomials")
    return determinant(sylvester_matrix(a.coeffs, b.coeffs), a.ctx)


def squarefree_decomposition(p: UniPoly):
    """Yun's algorithm: ``[(a_i, i)]`` with ``monic(p) == prod a_i**i``.

    Every ``a_i`` is monic, squarefree and nonconstant; distinct ``a_i`` are
    coprime.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    a = p.monic()
    if a.degree <= 0:
        return []
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    z = y - w.derivative()
    out = []
    i = 1
    while w.degree > 0:
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        z = y - w.derivative()
        i += 1
    return out


def poly_radical(p: UniPoly) -> UniPoly:
    """Squarefree part ``p / gcd(p, p')``, monic."""
    if p.is_zero():
        raise ValueError("radical of zero")
    m = p.monic()
    if m.degree <= 0:
        return UniPoly._raw(p.ctx, (p.ctx.one,))
    return m.exact_div(poly_gcd(m, m.derivative())).monic()


def radical_divides(a: UniPoly, b: UniPoly) -> bool:
    """Every irreducible factor of ``a`` divides ``b`` (no factoring needed)."""
    if a.is_zero() or b.is_zero():
        raise ValueError("radical_divides needs nonzero polynomials")
    return poly_radical(a).divides(b)


def remove_factor(p: UniPoly, q: UniPoly) -> UniPoly:
    """Strip every root of ``q`` from ``p`` (``p`` divided by its q-part)."""
    g = poly_gcd(p, q)
    while g.degree > 0:
        p = p.exact_div(g)
        g = poly_gcd(p, g)
    return p
