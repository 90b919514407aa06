"""Membership tests for the exceptional families and the catalog of Baker exceptions.

Every positive answer carries a witness ``sigma`` (when one exists) such that
``phi.conjugate(sigma)`` equals the canonical form stored on the tag; the
witness is re-checked before the tag is returned.

Affine conjugation fixes infinity, so the affine families are detected from
fixed-point and ramification data alone: the candidate translations are the
finite fixed points and the scaling is forced by the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency, ParamViolation, UnsupportedPeriod
from .exactnum.extension import Extension
from .exactnum.fields import QQ
from .exactnum.poly import UniPoly, poly_radical
from .ratmap.fixed import (
    context_roots,
    fixed_points,
    has_exact_period_point,
    totally_ramified_points,
    totally_ramified_polynomial,
)
from .ratmap.maps import Mobius, ProjPoint, RationalMap
from .ratmap.parse import parse_field, parse_map

BAKER_PAIRS = {(2, 2), (2, 3), (2, 4), (3, 2)}


@dataclass(frozen=True)
class FamilyTag:
    kind: str | None
    sigma: Mobius | None = None
    canonical: RationalMap | None = None
    params: dict = field(default_factory=dict)
    note: str = ""

    def __bool__(self):
        return self.kind is not None

    def to_dict(self):
        out = {"kind": self.kind}
        if self.sigma is not None:
            out["sigma"] = self.sigma.render()
            out["sigma_context"] = _ctx_text(self.sigma.ctx)
        if self.canonical is not None:
            out["canonical"] = self.canonical.render()
        if self.params:
            out["params"] = {k: str(v) for k, v in sorted(self.params.items())}
        if self.note:
            out["note"] = self.note
        return out


NONE = FamilyTag(None)


def _ctx_text(ctx):
    parts = []
    while ctx is not None and ctx is not QQ:
        parts.append(f"{ctx.name}: {ctx.minpoly_text()}")
        ctx = ctx.base
    return "QQ" if not parts else "; ".join(reversed(parts))


def _t(ctx):
    return UniPoly.gen(ctx)


def _checked(kind, phi, sigma, canonical, **params):
    if phi.over(sigma.ctx).conjugate(sigma) != canonical.over(sigma.ctx):
        raise InternalInconsistency(f"witness for {kind} does not conjugate {phi.render()}")
    return FamilyTag(kind, sigma, canonical, params)


def _finite_fixed_poly(phi):
    return phi.delta_form(1).dehomogenize()


def _infinity_fixed(phi):
    return phi(ProjPoint.infinity(phi.ctx)).is_infinity


def _root_of(c, k, ctx, allow_tower_growth):
    """A ``k``-th root of ``c`` in ``ctx`` (or a new extension); ``None`` if disallowed."""
    if k == 1:
        return ctx(c)
    p = _t(ctx) ** k - ctx(c)
    roots = context_roots(p)
    if roots:
        return sorted(roots, key=lambda r: (0, r) if ctx is QQ else (1, str(r)))[-1]
    if not allow_tower_growth:
        return None
    K = Extension(ctx, "lam", p)
    return K.gen


# -- family T ---------------------------------------------------------------


def in_T(phi: RationalMap) -> FamilyTag:
    """Second iterate totally ramified at 0 with 0 fixed by it."""
    F2, _ = phi.iterate_forms(2)
    if not all(c == 0 for c in F2.coeffs[:-1]):
        return NONE
    img = phi(ProjPoint(0, 1, phi.ctx))
    if img.is_infinity:
        return FamilyTag("T_ii")
    if img.value == 0:
        return FamilyTag("T_i")
    return FamilyTag("T_iii", params={"alpha": img.value})


# -- family E ---------------------------------------------------------------


def _canonical_E_ii(d, ctx=QQ):
    t = _t(ctx)
    return RationalMap(t**d, t ** (d - 1) + 1)


def _canonical_E_iii(ctx=QQ):
    t = _t(ctx)
    return RationalMap(t**2, 2 * t + 1)


def _match_E_ii(phi, allow_tower_growth):
    ctx, d = phi.ctx, phi.d
    n = _finite_fixed_poly(phi)
    if n.degree != 1 or not _infinity_fixed(phi):
        return None
    beta = -n.coeff(0) * ctx.inv(n.lc) if ctx is not QQ else QQ.div(-n.coeff(0), n.lc)
    phi1 = phi.conjugate(Mobius.affine(1, beta, ctx))
    f1, g1 = phi1.f, phi1.g
    if f1.degree != d or any(c != 0 for c in f1.coeffs[:-1]):
        return None
    k = f1.lc
    inv = ctx.inv(k)
    g = g1 * inv
    if g.degree != d - 1 or g.lc != 1 or any(c != 0 for c in g.coeffs[1:-1]):
        return None
    c = g.coeff(0)
    if c == 0:
        return None
    lam = _root_of(c, d - 1, ctx, allow_tower_growth)
    if lam is None:
        return FamilyTag("E_ii", note=f"scaling needs a root of lam^{d-1} = {ctx.render(c)}")
    K = lam.ctx if hasattr(lam, "ctx") else ctx
    sigma = Mobius(lam, K(beta), 0, 1, K)
    return _checked("E_ii", phi, sigma, _canonical_E_ii(d, K), beta=beta, c=c)


def _two_finite_fixed_ramified(phi):
    """``(beta, gamma, ctx)`` when d = 2, infinity is fixed and both finite fixed points are ramified."""
    if phi.d != 2 or not _infinity_fixed(phi):
        return None
    n = _finite_fixed_poly(phi)
    if n.degree != 2:
        return None
    r = poly_radical(n)
    if r.degree != 2:
        return None
    W = phi.wronskian_form().dehomogenize()
    if not r.divides(W):
        return None
    ctx = phi.ctx
    roots = sorted(context_roots(r), key=lambda x: (0, x) if ctx is QQ else (1, str(x)))
    if len(roots) == 2:
        return roots[0], roots[1], ctx
    K = Extension(ctx, "beta", r)
    return K.gen, -K(r.coeff(1)) - K.gen, K


def _match_E_iii(phi):
    found = _two_finite_fixed_ramified(phi)
    if found is None:
        return None
    beta, gamma, K = found
    sigma = Mobius(beta - gamma, beta, 0, 1, K)
    return _checked("E_iii", phi, sigma, _canonical_E_iii(K), beta=beta, gamma=gamma)


def in_E(phi: RationalMap, allow_tower_growth=True) -> FamilyTag:
    if phi.d < 2:
        raise ValueError("degree must be at least 2")
    n = phi.f - _t(phi.ctx) * phi.g
    if n.degree == 0:
        return FamilyTag("E_i", note="phi(t) - t = 1/g(t)")
    tag = _match_E_ii(phi, allow_tower_growth)
    if tag is not None:
        return tag
    tag = _match_E_iii(phi)
    return tag if tag is not None else NONE


# -- family F1 ----------------------------------------------------------------


def in_F1(phi: RationalMap) -> FamilyTag:
    """Affine conjugates of ``t^2/(t+1)`` (F1_a) and ``t^2/(2t+1)`` (F1_b)."""
    if phi.d != 2 or not _infinity_fixed(phi):
        return NONE
    ctx = phi.ctx
    T = totally_ramified_polynomial(phi)
    n = _finite_fixed_poly(phi)
    betas = sorted(context_roots(n), key=lambda x: (0, x) if ctx is QQ else (1, str(x)))
    t = _t(ctx)
    for beta in betas:
        if T(beta) != 0:
            continue
        phi1 = phi.conjugate(Mobius.affine(1, beta, ctx))
        f1, g1 = phi1.f, phi1.g
        if f1.degree != 2 or f1.coeff(0) != 0 or f1.coeff(1) != 0 or g1.degree != 1:
            continue
        inv = ctx.inv(f1.lc)
        a, b = g1.coeff(1) * inv, g1.coeff(0) * inv
        if b == 0:
            continue
        # rescaling by lam = b turns t^2/(a t + b) into t^2/(a t + 1)
        ratio = a
        if ratio == 1 or ratio == 2:
            kind = "F1_a" if ratio == 1 else "F1_b"
            canonical = RationalMap(t**2, ratio * t + 1)
            return _checked(kind, phi, Mobius(b, beta, 0, 1, ctx), canonical, beta=beta, lam=b)
    # both ramified fixed points irrational: only the t^2/(2t+1) shape is possible
    tag = _match_E_iii(phi)
    if tag is not None:
        return FamilyTag("F1_b", tag.sigma, tag.canonical, tag.params, "irrational fixed points")
    return NONE


# -- Baker families -------------------------------------------------------------


def in_B(phi: RationalMap, delta: int) -> FamilyTag:
    if delta not in (2, 3):
        raise UnsupportedPeriod(f"family B is defined here for periods 2 and 3, not {delta}")
    if has_exact_period_point(phi, delta):
        return NONE
    if (delta, phi.d) not in BAKER_PAIRS:
        raise InternalInconsistency(
            f"no point of exact period {delta} for degree {phi.d}: {phi.render()}"
        )
    return FamilyTag(f"B_{delta}_{phi.d}")


def _inverse_square_witness(phi):
    """Sigma with ``sigma^-1 o phi o sigma = 1/t^2`` if phi has a ramified 2-cycle."""
    if phi.d != 2:
        return None
    pts = totally_ramified_points(phi)
    if len(pts) != 2:
        return None
    P, Q = pts
    K = P.ctx if P.ctx is not phi.ctx else Q.ctx
    P, Q = P.over(K), Q.over(K)
    psi = phi.over(K)
    if psi(P) != Q or psi(Q) != P:
        return None
    R = None
    for rec in fixed_points(psi):
        if rec.conjugates == 1:
            R = rec.point
            break
    if R is None:
        R = fixed_points(psi)[0].point
    return three_point_mobius(P, Q, R)


def three_point_mobius(P, Q, R):
    """Sigma with ``sigma(0) = P``, ``sigma(inf) = Q`` and ``sigma(1) = R``."""
    L = R.ctx
    p1, p2 = L(P.u), L(P.v)
    q1, q2 = L(Q.u), L(Q.v)
    r1, r2 = L(R.u), L(R.v)
    det = q1 * p2 - q2 * p1
    mu = r1 * p2 - r2 * p1
    nu = q1 * r2 - q2 * r1
    # the common factor 1/det cancels projectively
    if det == 0:
        raise InternalInconsistency("three-point map needs distinct points")
    return Mobius(mu * q1, nu * p1, mu * q2, nu * p2, L)


def in_F2(phi: RationalMap) -> FamilyTag:
    tag = in_B(phi, 2)
    if tag:
        return tag
    sigma = _inverse_square_witness(phi)
    if sigma is None:
        return NONE
    canonical = RationalMap(UniPoly((1,), sigma.ctx), _t(sigma.ctx) ** 2)
    return _checked("F2_conj_inv_square", phi, sigma, canonical)


def in_F3(phi: RationalMap) -> FamilyTag:
    return in_B(phi, 3)


def pole_cycle_point(phi: RationalMap):
    """``alpha`` when ``{alpha, inf}`` is a 2-cycle whose only ramified point is infinity.

    These are the maps ``alpha + 1/g(t - alpha)`` with ``g`` quadratic,
    ``g(0) = 0`` and ``g`` not a monomial.
    """
    if phi.d != 2:
        return None
    inf = ProjPoint.infinity(phi.ctx)
    a = phi(inf)
    if a.is_infinity or not phi(a).is_infinity:
        return None
    if phi.wronskian_form().y_valuation() != phi.d - 1:
        return None
    if totally_ramified_polynomial(phi)(a.value) == 0:
        return None
    return a


def obstructing_family(phi: RationalMap, delta: int):
    """Name of the exceptional shape that rules out a marginal preperiodic point, if any."""
    if delta == 1:
        return in_E(phi).kind
    if delta == 2:
        tag = in_F2(phi)
        if tag:
            return tag.kind
        return "P2_pole_cycle" if pole_cycle_point(phi) is not None else None
    if delta == 3:
        return in_B(phi, 3).kind
    return None


# -- Kisaka catalog -------------------------------------------------------------

KISAKA_IDS = (
    "kisaka-2-2",
    "kisaka-2-3-a",
    "kisaka-2-3-b",
    "kisaka-2-3-c",
    "kisaka-2-4-1",
    "kisaka-2-4-2",
    "kisaka-2-4-3",
    "kisaka-2-4-4",
    "kisaka-3-2-a",
    "kisaka-3-2-b",
)

KISAKA_PERIOD = {cid: int(cid.split("-")[1]) for cid in KISAKA_IDS}
KISAKA_PARAM = {"kisaka-2-2": "a", "kisaka-2-3-a": "a", "kisaka-2-3-b": "b", "kisaka-2-3-c": "c"}


def _omega_context(ctx):
    for level in ctx.tower():
        if isinstance(level, Extension) and level.modulus == UniPoly((1, 1, 1), level.base):
            return ctx, ctx(level.gen)
    K = parse_field("w: w^2+w+1", ctx)
    return K, K.gen


def kisaka_map(case: str, param=None, ctx=QQ) -> RationalMap:
    """The catalog map for ``case``; parametric cases take one parameter value."""
    if case not in KISAKA_IDS:
        raise ValueError(f"unknown catalog id {case!r}")
    name = KISAKA_PARAM.get(case)
    if name is not None:
        if param is None:
            raise ParamViolation(f"{case} needs parameter {name}")
        p = ctx(param)
        if case == "kisaka-2-2" and p == -1:
            raise ParamViolation("a != -1 violated")
        if case in ("kisaka-2-3-a", "kisaka-2-3-b", "kisaka-2-3-c") and p == 0:
            raise ParamViolation(f"{name} != 0 violated")
        if case == "kisaka-2-3-c" and p * p + 4 == 0:
            raise ParamViolation("c != +-2i violated")
        t = _t(ctx)
        if case == "kisaka-2-2":
            return RationalMap(t**2 - t, p * t + 1)
        if case == "kisaka-2-3-a":
            return RationalMap(t**3 + p * t**2 - t, (p * p - 1) * t**2 - 2 * p * t + 1)
        if case == "kisaka-2-3-b":
            return RationalMap(t**3 - t, -(t**2) + p * t + 1)
        four_over_c = ctx.div(4, p) if ctx is QQ else 4 * ctx.inv(p)
        return RationalMap(t**3 + four_over_c * t**2 - t, -(t**2) + p * t + 1)
    if param is not None:
        raise ParamViolation(f"{case} takes no parameter")
    if case == "kisaka-2-4-1":
        return parse_map("(t^4 - t)/(-2*t^3 + 1)", ctx)
    if case == "kisaka-2-4-2":
        return parse_map("(t^4 + t^3 + t^2 - t)/(-t^3 + t^2 - 3*t + 1)", ctx)
    if case == "kisaka-2-4-3":
        K = parse_field("r: r^3 - 3", ctx)
        # with r = 3^(1/3): 3^(2/3) = r^2, 3^(4/3) = 3r, 3^(-1/3) = r^2/3
        return parse_map("(t^4 - r*t^3 + r^2*t^2 - t)/(-t^3 + 3*r*t^2 - 5*(r^2/3)*t + 1)", K)
    if case == "kisaka-2-4-4":
        K = parse_field("s: s^2 - 5", ctx)
        b0, bb0, c0, cb0 = "(3 + s)/2", "(3 - s)/2", "(-5 - s)/2", "(-5 + s)/2"
        return parse_map(f"(t^4 + {cb0}*t^3 + {bb0}*t^2 - t)/(-t^3 + {b0}*t^2 + {c0}*t + 1)", K)
    K, w = _omega_context(ctx)
    t = _t(K)
    if case == "kisaka-3-2-a":
        coef = (w + 5) * K.inv(w - 1)
        return RationalMap(t**2 + w * t, coef * t + 1)
    return RationalMap(t**2 + w * t, w * t + 1)


__all__ = [
    "FamilyTag",
    "in_T",
    "in_E",
    "in_F1",
    "in_B",
    "in_F2",
    "in_F3",
    "obstructing_family",
    "pole_cycle_point",
    "kisaka_map",
    "KISAKA_IDS",
    "KISAKA_PERIOD",
    "BAKER_PAIRS",
]
