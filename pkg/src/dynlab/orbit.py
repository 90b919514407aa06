"""Exact orbits over Q, eventual periodicity, height certificates and reduction mod p.

Points are coprime integer pairs ``(u, v)`` with ``v >= 0`` and infinity
``(1, 0)``.  Iteration uses the integral homogeneous forms of the map, then
strips the gcd, so nothing ever leaves ``Z``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DigitCapExceeded, FactorBudgetExceeded
from .exactnum.fields import QQ
from .exactnum.forms import BiForm
from .ratmap.maps import ProjPoint, RationalMap

DEFAULT_DIGIT_CAP = 100_000
_LOG10_2 = math.log10(2)


@dataclass(frozen=True)
class OrbitPoint:
    n: int
    u: int
    v: int

    @property
    def is_infinity(self):
        return self.v == 0

    @property
    def height(self):
        return max(abs(self.u), abs(self.v))

    @property
    def value(self):
        """``Fraction``/``int`` value, ``None`` at infinity."""
        if self.v == 0:
            return None
        return QQ(Fraction(self.u, self.v))

    def point(self):
        return ProjPoint(self.u, self.v)

    def to_dict(self):
        return {"n": self.n, "u": str(self.u), "v": str(self.v)}

    def render(self):
        if self.v == 0:
            return "inf"
        return str(self.u) if self.v == 1 else f"{self.u}/{self.v}"


def _normalize(u, v):
    g = math.gcd(u, v)
    if g == 0:
        raise ValueError("(0, 0) is not a point of P^1")
    u, v = u // g, v // g
    if v < 0 or (v == 0 and u < 0):
        u, v = -u, -v
    return u, v


def as_pair(x):
    """Coprime ``(u, v)`` for anything ``ProjPoint.of`` accepts."""
    if isinstance(x, OrbitPoint):
        return x.u, x.v
    if isinstance(x, tuple):
        return _normalize(*x)
    p = ProjPoint.of(x)
    return p.u, p.v


def _int_coeffs(phi: RationalMap):
    if phi.ctx is not QQ:
        raise ValueError("orbits are computed over Q only")
    return [int(c) for c in phi.F.coeffs], [int(c) for c in phi.G.coeffs]


def _hom_eval(coeffs, u, v):
    # sum c_i u^i v^(d-i), Horner in u with running powers of v
    d = len(coeffs) - 1
    acc = coeffs[d]
    vp = 1
    for i in range(d - 1, -1, -1):
        vp *= v
        acc = acc * u + coeffs[i] * vp
    return acc


def _digits(n):
    return int(abs(n).bit_length() * _LOG10_2) + 1


def _image(f, g, res, u, v):
    # for coprime (u, v) the gcd of F(u,v) and G(u,v) divides Res(F, G), so
    # reduce mod res first: huge orbit terms never meet a full-size gcd
    a, b = _hom_eval(f, u, v), _hom_eval(g, u, v)
    h = math.gcd(math.gcd(a % res, b % res), res)
    a, b = a // h, b // h
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return a, b


def _resultant(phi):
    return abs(int(phi.resultant))


def step(phi: RationalMap, u: int, v: int):
    """One application of ``phi`` to the coprime pair ``(u, v)``."""
    f, g = _int_coeffs(phi)
    return _image(f, g, _resultant(phi), u, v)


def iter_orbit(phi: RationalMap, x0, digit_cap=DEFAULT_DIGIT_CAP):
    """Infinite generator of orbit points; raises ``DigitCapExceeded`` on runaway growth."""
    f, g = _int_coeffs(phi)
    res = _resultant(phi)
    u, v = as_pair(x0)
    n = 0
    while True:
        yield OrbitPoint(n, u, v)
        u, v = _image(f, g, res, u, v)
        n += 1
        if digit_cap is not None and max(_digits(u), _digits(v)) > digit_cap:
            raise DigitCapExceeded(f"x_{n} exceeds the digit cap of {digit_cap}")


def orbit(phi: RationalMap, x0, N: int, digit_cap=DEFAULT_DIGIT_CAP) -> list:
    """``x_0, ..., x_N`` as exact coprime pairs.

    >>> [p.render() for p in orbit(RationalMap.parse("t^2-2*t+2"), 3, 4)]
    ['3', '5', '17', '257', '65537']
    """
    out = []
    for pt in iter_orbit(phi, x0, digit_cap):
        out.append(pt)
        if pt.n >= N:
            break
    return out


# -- height certificate ------------------------------------------------------


def _solve(rows, rhs):
    """Gauss-Jordan over Q for a square nonsingular system."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                k = m[r][col]
                m[r] = [a - k * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def cofactor_forms(phi: RationalMap):
    """Integer forms ``A, B, C, D`` of degree ``d - 1`` and the scale ``L`` with

    ``A*F + B*G = L * x^(2d-1)`` and ``C*F + D*G = L * y^(2d-1)``.

    ``L`` is the least common denominator of the rational solutions; it
    divides the resultant.
    """
    F, G = _int_coeffs(phi)
    d = phi.d
    size = 2 * d
    # unknowns: A_0..A_{d-1}, B_0..B_{d-1}; equation k is the x^k y^(2d-1-k) coefficient
    rows = [[0] * size for _ in range(size)]
    for j in range(d):
        for i in range(d + 1):
            rows[i + j][j] += F[i]
            rows[i + j][d + j] += G[i]
    ex = [0] * (size - 1) + [1]
    ey = [1] + [0] * (size - 1)
    sx, sy = _solve(rows, ex), _solve(rows, ey)
    L = math.lcm(*(c.denominator for c in sx + sy))
    ints = [int(c * L) for c in sx + sy]
    A, B, C, D = ints[:d], ints[d:size], ints[size : size + d], ints[size + d :]
    return A, B, C, D, L


@dataclass(frozen=True)
class WanderingCertificate:
    """``H(x) > threshold`` forces ``H(phi(x)) > H(x)`` for every ``x`` in P^1(Q).

    With cofactor forms as in :func:`cofactor_forms` and
    ``K = max(|A|_1 + |B|_1, |C|_1 + |D|_1)``: the gcd ``g`` of ``F(u,v)`` and
    ``G(u,v)`` divides ``L``, and ``L*H^(2d-1) <= K*H^(d-1)*max(|F|,|G|)``, so
    the next height is at least ``H^d / K``.  That exceeds ``H`` as soon as
    ``H^(d-1) > K``; ``threshold`` is the least integer with
    ``threshold^(d-1) >= K``.  Growth then continues forever, so no repeat.
    """

    constant: int
    threshold: int
    n0: int
    height: int

    def to_dict(self):
        return {
            "constant": str(self.constant),
            "threshold": str(self.threshold),
            "n0": self.n0,
            "height": str(self.height),
        }


def height_threshold(phi: RationalMap):
    """``(K, H*)`` for the certificate, or ``None`` for degree-1 maps."""
    if phi.d < 2:
        return None
    A, B, C, D, _ = cofactor_forms(phi)
    l1 = lambda c: sum(abs(x) for x in c)  # noqa: E731
    K = max(l1(A) + l1(B), l1(C) + l1(D))
    h = integer_root_ceil(K, phi.d - 1)
    return K, h


def integer_root_ceil(n, k):
    """Least integer ``h >= 1`` with ``h**k >= n``."""
    from .primeledger.factor import integer_root

    r = integer_root(n, k)
    return max(1, r if r**k >= n else r + 1)


@dataclass(frozen=True)
class Preperiodic:
    tail: int
    period: int

    kind = "preperiodic"

    def to_dict(self):
        return {"status": self.kind, "tail": self.tail, "period": self.period}


@dataclass(frozen=True)
class Wandering:
    certificate: WanderingCertificate

    kind = "wandering"

    def to_dict(self):
        return {"status": self.kind, "certificate": self.certificate.to_dict()}


@dataclass(frozen=True)
class Unknown:
    steps_tried: int

    kind = "unknown"

    def to_dict(self):
        return {"status": self.kind, "steps_tried": self.steps_tried}


def classify_orbit(phi: RationalMap, x0, max_steps=64, digit_cap=DEFAULT_DIGIT_CAP):
    """Preperiodic (minimal tail and period), Wandering (with certificate) or Unknown.

    >>> classify_orbit(RationalMap.parse("t^2-1"), 0)
    Preperiodic(tail=0, period=2)
    """
    bound = height_threshold(phi)
    seen = {}
    try:
        for pt in iter_orbit(phi, x0, digit_cap):
            key = (pt.u, pt.v)
            if key in seen:
                first = seen[key]
                return Preperiodic(first, pt.n - first)
            seen[key] = pt.n
            if bound is not None and pt.height > bound[1]:
                return Wandering(WanderingCertificate(bound[0], bound[1], pt.n, pt.height))
            if pt.n >= max_steps:
                return Unknown(max_steps)
    except DigitCapExceeded:
        return Unknown(len(seen))


# -- reduction modulo p ---------------------------------------------------------


def reduce_point(x, p: int):
    """Canonical reduction to P^1(F_p): ``(r, 1)`` or ``(1, 0)``.

    >>> reduce_point(Fraction(1, 5), 5)
    (1, 0)
    """
    u, v = as_pair(x)
    return _reduce_pair(u, v, p)


def _reduce_pair(u, v, p):
    u, v = u % p, v % p
    if v == 0:
        if u == 0:
            raise ValueError("pair not coprime to p")
        return (1, 0)
    return (u * pow(v, -1, p) % p, 1)


def congruent(a, b, p: int) -> bool:
    """``a`` and ``b`` have the same reduction in P^1(F_p)."""
    return reduce_point(a, p) == reduce_point(b, p)


def reduced_image(phi: RationalMap, point, p: int):
    """Apply the reduction of ``phi`` to a point of P^1(F_p) (good primes only)."""
    f, g = _int_coeffs(phi)
    u, v = point
    a, b = _hom_eval(f, u, v) % p, _hom_eval(g, u, v) % p
    return _reduce_pair(a, b, p)


def diff_numerator(a, b) -> int:
    """Numerator of ``a - b`` for finite points (sign kept)."""
    ua, va = as_pair(a)
    ub, vb = as_pair(b)
    if va == 0 or vb == 0:
        raise ValueError("difference with infinity")
    return Fraction(ua * vb - ub * va, va * vb).numerator


@dataclass(frozen=True)
class BadPrimeSet:
    primes: tuple
    resultant: int
    cofactor: int = 1
    extra: tuple = ()

    @property
    def complete(self):
        return self.cofactor == 1

    def __contains__(self, p):
        return p in self.primes or p in self.extra or (self.cofactor != 1 and self.cofactor % p == 0)

    def __iter__(self):
        return iter(sorted(set(self.primes) | set(self.extra)))

    def with_extra(self, *ints, budget_ms=None):
        """Add the primes of some auxiliary integers (suite-specific exclusions)."""
        from .primeledger.factor import factor

        more = set(self.extra)
        cof = self.cofactor
        for n in ints:
            if n:
                f = factor(n, budget_ms)
                more |= set(f.primes)
                cof *= f.cofactor
        return BadPrimeSet(self.primes, self.resultant, cof, tuple(sorted(more - set(self.primes))))

    def to_dict(self):
        return {
            "primes": [str(p) for p in self],
            "resultant": str(self.resultant),
            "cofactor": str(self.cofactor),
        }


def bad_primes(phi: RationalMap, budget_ms=None, strict=False) -> BadPrimeSet:
    """Primes dividing ``Res(F, G)``: outside them ``phi`` has good reduction.

    With ``strict=True`` an incomplete factorisation raises
    ``FactorBudgetExceeded``; otherwise the cofactor is kept and membership
    tests treat its divisors as bad.
    """
    from .primeledger.factor import factor

    _int_coeffs(phi)
    R = int(phi.resultant)
    f = factor(R, budget_ms)
    out = BadPrimeSet(tuple(f.support), R, f.cofactor)
    if strict and not f.complete:
        raise FactorBudgetExceeded("resultant not fully factored", f.cofactor, out)
    return out


# -- serialisation ----------------------------------------------------------------


def orbit_jsonl(points) -> str:
    return "\n".join(json.dumps(p.to_dict()) for p in points)


def orbit_csv(points) -> str:
    return "\n".join(["n,u,v"] + [f"{p.n},{p.u},{p.v}" for p in points])
