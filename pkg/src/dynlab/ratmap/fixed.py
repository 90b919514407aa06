"""Fixed points, multipliers, ramification and exact-period tests.

Finite fixed points are read off the squarefree (Yun) pieces of ``N_1(t, 1)``:
every root of the piece of index ``l`` has multiplicity ``l``.  Roots in the
current context become individual records; whatever is left of a piece becomes
one *cluster* record living in an extension generated by the leftover factor,
standing for all of its conjugate roots at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from ..errors import (
    InternalInconsistency,
    NotFixed,
    SplitRequired,
    TowerBudgetExceeded,
    UnrepresentableRoot,
    UnsupportedPeriod,
)
from ..exactnum.branches import split_branches
from ..exactnum.extension import Extension
from ..exactnum.fields import QQ
from ..exactnum.forms import (
    BiForm,
    distinct_linear_factor_count,
    form_divides,
    form_exact_div,
    form_gcd,
    form_radical,
)
from ..exactnum.poly import UniPoly, poly_gcd, poly_radical, remove_factor, squarefree_decomposition
from ..exactnum.roots import rational_roots
from .maps import ProjPoint, RationalMap


@dataclass(frozen=True)
class FixedPointRecord:
    point: ProjPoint
    multiplier: object
    multiplicity: int
    totally_ramified: bool
    conjugates: int = 1
    minpoly: UniPoly | None = None

    @property
    def weight(self):
        """Contribution to the census ``sum of multiplicities = d + 1``."""
        return self.multiplicity * self.conjugates

    def describe(self):
        where = self.point.render() if self.minpoly is None else f"root of {self.minpoly.render()}"
        return {
            "point": where,
            "multiplier": self.point.ctx.render(self.multiplier),
            "multiplicity": self.multiplicity,
            "conjugates": self.conjugates,
            "totally_ramified": self.totally_ramified,
        }


@dataclass(frozen=True)
class PeriodWitness:
    """Outcome of the exact-period test; truthy iff such points exist."""

    delta: int
    exists: bool
    witness: BiForm | None = None

    def __bool__(self):
        return self.exists


@dataclass(frozen=True)
class NotFound:
    family: str | None
    reason: str

    def __bool__(self):
        return False


def _t(ctx):
    return UniPoly.gen(ctx)


def context_roots(p: UniPoly) -> list:
    """Roots of ``p`` lying in its coefficient context (no tower growth).

    Over ``QQ`` this is complete.  Over an extension only roots of linear
    squarefree pieces and rational roots of rational polynomials are found.
    """
    if p.degree <= 0:
        return []
    if p.ctx is QQ:
        return rational_roots(p)
    roots = []
    r = poly_radical(p)
    if all(_is_rational(c) for c in r.coeffs):
        qq = UniPoly([_to_rational(c) for c in r.coeffs], QQ)
        roots = [r.ctx(x) for x in rational_roots(qq)]
        for x in roots:
            r = r.exact_div(_t(r.ctx) - x)
    if r.degree == 1:
        roots.append(-r.coeff(0) * r.ctx.inv(r.lc))
    return roots


def _is_rational(c):
    ctx = getattr(c, "ctx", None)
    if ctx is None:
        return True
    return all(x == 0 for x in c.coords[1:]) and _is_rational(c.coords[0])


def _to_rational(c):
    while hasattr(c, "coords"):
        c = c.coords[0]
    return c


def _sort_key(x):
    if hasattr(x, "coords"):
        return (1, str(x))
    return (0, x)


# -- multipliers ---------------------------------------------------------------


def _chart_at_infinity(phi: RationalMap):
    """``(Gr, Fr)`` with ``1/phi(1/s) = Gr(s)/Fr(s)``."""
    return phi.G.dehomogenize_x(), phi.F.dehomogenize_x()


def multiplier(phi: RationalMap, P) -> object:
    """Derivative at a fixed point; at infinity the derivative of ``1/phi(1/t)`` at 0."""
    P = ProjPoint.of(P, phi.ctx) if not isinstance(P, ProjPoint) else P
    ctx = P.ctx
    if ctx is not phi.ctx:
        phi = phi.over(ctx)
    if phi(P) != P:
        raise NotFixed(f"{P.render()} is not fixed by {phi.render()}")
    if P.is_infinity:
        Gr, Fr = _chart_at_infinity(phi)
        # fixed at infinity means Gr(0) = 0, and then Fr(0) != 0
        return ctx.div(Gr.coeff(1), Fr.coeff(0)) if ctx is QQ else Gr.coeff(1) * ctx.inv(Fr.coeff(0))
    x = P.value
    num = phi.f.derivative() * phi.g - phi.f * phi.g.derivative()
    gx = phi.g(x)
    return ctx.div(num(x), gx * gx) if ctx is QQ else num(x) * ctx.inv(gx * gx)


def infinity_fixed_multiplicity(phi: RationalMap) -> int:
    """Order of vanishing of ``1/phi(1/s) - s`` at ``s = 0`` (0 if infinity is not fixed)."""
    Gr, Fr = _chart_at_infinity(phi)
    s = _t(phi.ctx)
    if Gr.coeff(0) != 0:
        return 0
    return int((Gr - s * Fr).valuation())


# -- ramification ------------------------------------------------------------


def _wronskian_pieces(phi):
    W = phi.wronskian_form()
    w = W.dehomogenize()
    pieces = squarefree_decomposition(w) if w.degree > 0 else []
    return W, pieces


def ramification_at_infinity(phi: RationalMap) -> int:
    """``e_inf - 1`` from the Wronskian of the chart pair ``(F(1, s), G(1, s))``."""
    Fr, Gr = phi.F.dehomogenize_x(), phi.G.dehomogenize_x()
    w = Fr.derivative() * Gr - Fr * Gr.derivative()
    return int(w.valuation())


def totally_ramified_polynomial(phi: RationalMap) -> UniPoly:
    """Monic polynomial whose roots are the finite totally ramified points."""
    _, pieces = _wronskian_pieces(phi)
    out = UniPoly._raw(phi.ctx, (phi.ctx.one,))
    for piece, i in pieces:
        if i == phi.d - 1:
            out = out * piece
    return out


def totally_ramified_points(phi: RationalMap, allow_tower_growth=True) -> list:
    """Points with a one-point fibre; at most two.

    Irrational points are returned over a quadratic extension generated by
    their minimal polynomial.
    """
    if phi.d < 2:
        raise ValueError("degree must be at least 2")
    W, _ = _wronskian_pieces(phi)
    T = totally_ramified_polynomial(phi)
    ctx = phi.ctx
    pts = []
    for r in sorted(context_roots(T), key=_sort_key):
        pts.append(ProjPoint(r, 1, ctx))
        T = T.exact_div(_t(ctx) - r)
    if T.degree > 0:
        if not allow_tower_growth:
            raise UnrepresentableRoot(f"totally ramified points are roots of {T.render()}")
        if T.degree > 2:
            raise InternalInconsistency("more than two totally ramified points")
        K = Extension(ctx, "rho", T)
        if T.degree == 1:
            pts.append(ProjPoint(K.gen, 1, K))
        else:
            other = -K(T.coeff(1)) - K.gen
            pts += [ProjPoint(K.gen, 1, K), ProjPoint(other, 1, K)]
    if W.y_valuation() == phi.d - 1:
        pts.append(ProjPoint.infinity(ctx))
    if len(pts) > 2:
        raise InternalInconsistency(f"{len(pts)} totally ramified points for {phi.render()}")
    return pts


def critical_point_count(phi: RationalMap) -> int:
    """Critical points with multiplicity: finite Wronskian roots plus the chart at infinity."""
    W = phi.wronskian_form()
    finite = W.dehomogenize().degree
    finite = 0 if finite == -math.inf else finite
    at_inf = ramification_at_infinity(phi)
    if at_inf != W.y_valuation():
        raise InternalInconsistency("ramification at infinity disagrees between charts")
    total = finite + at_inf
    if total != 2 * phi.d - 2:
        raise InternalInconsistency(f"critical count {total} != 2d-2 for {phi.render()}")
    return total


# -- fixed points ------------------------------------------------------------


def fixed_points(phi: RationalMap, allow_tower_growth=True) -> list:
    """Fixed points with multipliers and multiplicities; weights sum to ``d + 1``."""
    if phi.d < 2:
        raise ValueError("degree must be at least 2")
    ctx = phi.ctx
    N1 = phi.delta_form(1)
    k_inf = infinity_fixed_multiplicity(phi)
    if k_inf != N1.y_valuation():
        raise InternalInconsistency("multiplicity at infinity disagrees between charts")
    T = totally_ramified_polynomial(phi)
    tr_inf = phi.wronskian_form().y_valuation() == phi.d - 1
    records = []
    n = N1.dehomogenize()
    for idx, (piece, ell) in enumerate(squarefree_decomposition(n) if n.degree > 0 else []):
        for r in sorted(context_roots(piece), key=_sort_key):
            P = ProjPoint(r, 1, ctx)
            records.append(FixedPointRecord(P, multiplier(phi, P), ell, T(r) == 0))
            piece = piece.exact_div(_t(ctx) - r)
        if piece.degree <= 0:
            continue
        if not allow_tower_growth:
            raise UnrepresentableRoot(f"fixed points are roots of {piece.render()}")
        g = poly_gcd(piece, T)
        parts = [(piece, False)] if g.degree <= 0 else [(g, True), (piece.exact_div(g), False)]
        for j, (m, tr) in enumerate(parts):
            if m.degree <= 0:
                continue
            K = Extension(ctx, f"fix{idx}_{j}", m)
            P = ProjPoint(K.gen, 1, K)
            records.append(FixedPointRecord(P, multiplier(phi, P), ell, tr, m.degree, m))
    if k_inf:
        P = ProjPoint.infinity(ctx)
        records.append(FixedPointRecord(P, multiplier(phi, P), k_inf, tr_inf))
    total = sum(r.weight for r in records)
    if total != phi.d + 1:
        raise InternalInconsistency(f"fixed-point census {total} != d+1 for {phi.render()}")
    for r in records:
        ctxr = r.point.ctx
        lam_is_one = _zero_test(ctxr, r.multiplier - ctxr.one)
        if (r.multiplicity > 1) != lam_is_one:
            raise InternalInconsistency(f"multiplicity/multiplier mismatch at {r.describe()}")
    return records


def _zero_test(ctx, a):
    return ctx.zero_test(a) if ctx is not QQ else a == 0


# -- periodic points ------------------------------------------------------------


def has_exact_period_point(phi: RationalMap, delta: int) -> PeriodWitness:
    """Whether some point has exact period ``delta`` (``delta`` prime, 2 or 3).

    For prime ``delta`` a root of ``N_delta`` has exact period ``delta`` unless
    it is fixed, so the answer is *no* exactly when ``rad(N_delta) | N_1``.
    """
    if delta not in (2, 3):
        raise UnsupportedPeriod(f"exact-period test implemented for 2 and 3, not {delta}")
    Nd = phi.delta_form(delta)
    N1 = phi.delta_form(1)
    R = form_radical(Nd)
    if form_divides(R, N1):
        return PeriodWitness(delta, False)
    return PeriodWitness(delta, True, form_exact_div(R, form_gcd(R, N1)))


def exact_period_polynomial(phi: RationalMap, delta: int) -> UniPoly:
    """Monic squarefree polynomial whose roots are the finite points of exact period ``delta``."""
    P = poly_radical(phi.delta_form(delta).dehomogenize())
    for k in range(1, delta):
        if delta % k == 0:
            P = remove_factor(P, phi.delta_form(k).dehomogenize())
    return P.monic()


def _orbit_point(phi, P, steps):
    for _ in range(steps):
        P = phi(P)
    return P


def _preimage_search(phi, beta, delta, allow, budget):
    """A non-periodic preimage of the period-``delta`` point ``beta``, or ``None``."""
    ctx = phi.ctx
    B = ProjPoint(beta, 1, ctx)
    gamma = _orbit_point(phi, B, delta - 1)
    h = phi.f - phi.g * ctx(beta)
    if not gamma.is_infinity:
        h = remove_factor(h, _t(ctx) - gamma.value)
    for r in sorted(context_roots(h), key=_sort_key):
        return ProjPoint(r, 1, ctx)
    inf = ProjPoint.infinity(ctx)
    if not gamma.is_infinity and phi(inf) == B:
        return inf
    for r in context_roots(h):
        h = remove_factor(h, _t(ctx) - r)
    if h.degree <= 0 or not allow:
        return None
    if ctx.absolute_degree * h.degree > budget:
        raise TowerBudgetExceeded(
            f"extension of degree {ctx.absolute_degree * h.degree} exceeds budget {budget}"
        )
    K = Extension(ctx, "alpha", h)
    return ProjPoint(K.gen, 1, K)


def _verify_marginal(phi, alpha, delta):
    """Independent recheck of the three defining conditions in ``alpha``'s context."""
    ctx = alpha.ctx
    psi = phi.over(ctx)
    image = psi(alpha)
    if image.is_infinity:
        return False
    orbit = [image]
    for _ in range(delta):
        orbit.append(psi(orbit[-1]))
    if orbit[delta] != image:
        return False
    for k in range(1, delta):
        if delta % k == 0 and orbit[k] == image:
            return False
    back = _orbit_point(psi, alpha, delta)
    if back.is_infinity or alpha.is_infinity:
        return back != alpha
    return not _zero_test(ctx, back.value - alpha.value)


def find_marginal_preperiodic(phi: RationalMap, delta: int, allow_tower_growth=False, tower_budget=24):
    """A point ``alpha`` with ``phi(alpha)`` finite of exact period ``delta`` and ``alpha`` not periodic.

    Candidates are searched in a fixed order: periodic points in the base
    context (ascending), then, if permitted, a generic root of the remaining
    periodic points, and for each the preimages in ascending order.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    ctx = phi.ctx
    E = exact_period_polynomial(phi, delta)
    betas = sorted(context_roots(E), key=_sort_key)
    for beta in betas:
        alpha = _preimage_search(phi, beta, delta, allow_tower_growth, tower_budget)
        if alpha is not None:
            if not _verify_marginal(phi, alpha, delta):
                raise InternalInconsistency(f"marginal point {alpha} failed recheck")
            return alpha
        E = E.exact_div(_t(ctx) - beta)
    if E.degree > 0 and allow_tower_growth:
        if ctx.absolute_degree * E.degree > tower_budget:
            raise TowerBudgetExceeded(
                f"extension of degree {ctx.absolute_degree * E.degree} exceeds budget {tower_budget}"
            )
        K = Extension(ctx, "beta", E)

        def attempt(c):
            return _preimage_search(phi.over(c), c.gen, delta, True, tower_budget)

        for _, alpha in split_branches(attempt, K):
            if alpha is not None:
                if not _verify_marginal(phi, alpha, delta):
                    raise InternalInconsistency(f"marginal point {alpha} failed recheck")
                return alpha
    from ..classify import obstructing_family

    fam = obstructing_family(phi, delta)
    if fam is None and E.degree > 0 and not allow_tower_growth:
        return NotFound(None, "candidates need an algebraic extension; tower growth disabled")
    return NotFound(fam, "no marginal preperiodic point exists" if fam else "search exhausted")


__all__ = [
    "FixedPointRecord",
    "PeriodWitness",
    "NotFound",
    "context_roots",
    "multiplier",
    "fixed_points",
    "totally_ramified_points",
    "totally_ramified_polynomial",
    "ramification_at_infinity",
    "infinity_fixed_multiplicity",
    "critical_point_count",
    "has_exact_period_point",
    "exact_period_polynomial",
    "find_marginal_preperiodic",
    "distinct_linear_factor_count",
]
