"""Rational roots of rational polynomials by p-adic lifting.

The textbook rational-root test enumerates divisors of the constant term and
the leading coefficient, which means factoring them.  Here a root modulo a
small prime is Newton-lifted until the modulus exceeds twice a bound on
``lc * root`` and the candidate is then tested exactly; nothing is factored.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import QQ
from .poly import UniPoly, _zz_gcd, _zz_primitive, _zz_exact_div, _qq_to_zz

_SMALL_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, int(p**0.5) + 1))]


def _eval_mod(c, x, m):
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % m
    return acc


def _fp_poly_gcd_is_one(a, b, p):
    a = [x % p for x in a]
    b = [x % p for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] * inv % p
            shift = len(r) - len(b)
            for j, y in enumerate(b):
                r[shift + j] = (r[shift + j] - c * y) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) == 1


def rational_roots(p: UniPoly) -> list:
    """Distinct rational roots of a nonzero polynomial over ``QQ``, ascending."""
    if p.ctx is not QQ:
        raise TypeError("rational_roots expects a polynomial over QQ")
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    c = _zz_primitive(_qq_to_zz(p.coeffs))
    roots = []
    if c[0] == 0:
        roots.append(0)
        k = next(i for i, a in enumerate(c) if a != 0)
        c = c[k:]
    if len(c) <= 1:
        return sorted(roots)
    d = [i * a for i, a in enumerate(c)][1:]
    if len(c) > 2:
        g = _zz_gcd(c, d)
        if len(g) > 1:
            c = _zz_primitive(_zz_exact_div(c, g))
            d = [i * a for i, a in enumerate(c)][1:]
    if len(c) == 2:
        roots.append(QQ(Fraction(-c[0], c[1])))
        return sorted(roots)
    lc = c[-1]
    bound = 2 * abs(lc) * (1 + max(abs(a) for a in c))
    prime = next(q for q in _SMALL_PRIMES if lc % q and _fp_poly_gcd_is_one(c, d, q))
    for r in range(prime):
        if _eval_mod(c, r, prime):
            continue
        m = prime
        while m <= bound:
            m2 = m * m
            fr = _eval_mod(c, r, m2)
            dr = _eval_mod(d, r, m2)
            r = (r - fr * pow(dr, -1, m2)) % m2
            m = m2
        n = lc * r % m
        if n > m // 2:
            n -= m
        cand = Fraction(n, lc)
        if _eval_mod_exact(c, cand) == 0:
            roots.append(QQ(cand))
    return sorted(set(roots))


def _eval_mod_exact(c, x):
    num, den = x.numerator, x.denominator
    k = len(c) - 1
    acc = 0
    for i in range(k, -1, -1):
        acc = acc * num + c[i] * den ** (k - i)
    return acc
