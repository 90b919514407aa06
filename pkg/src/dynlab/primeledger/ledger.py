"""Prime bookkeeping along orbits.

Two ledgers:

* ``DiffLedger``: for every window cell ``(n, D)`` with ``n + D <= N_max`` and
  ``1 <= D <= M`` the factored numerator of ``x_{n+D} - x_n`` (numerator
  mode), or the primes at which the two points meet in P^1(F_p) (projective
  mode).
* ``SequenceLedger``: the factored numerators ``u_n`` of the orbit itself.

Every primitivity notion here is relative to the computed window.  Candidate
primes only come from factorisations, but the "does p divide cell (N, D)"
question is always answered exactly by reducing the cell mod p, so an
unfactored cofactor never turns into a false negative elsewhere.  Cells whose
factorisation ran out of budget carry ``censored=True``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from ..exactnum.poly import UniPoly, poly_resultant
from ..orbit import DEFAULT_DIGIT_CAP, bad_primes, classify_orbit, congruent, orbit
from ..ratmap.maps import RationalMap
from .factor import Factorization, factor, multiplicative_order, primes_up_to

WINDOW_NOTE = "window-certified"


@dataclass
class Cell:
    n: int
    delta: int
    value: int | None
    factorization: Factorization | None
    primes: tuple
    censored: bool

    def to_dict(self):
        return {
            "n": self.n,
            "delta": self.delta,
            "value": None if self.value is None else str(self.value),
            "primes": [str(p) for p in self.primes],
            "exponents": {str(p): e for p, e in sorted(self.factorization.primes.items())}
            if self.factorization
            else {},
            "cofactor": str(self.factorization.cofactor) if self.factorization else "1",
            "censored": self.censored,
        }


@dataclass
class DiffLedger:
    phi: RationalMap
    x0: object
    N_max: int
    M: int
    mode: str
    budget_ms: float | None
    points: list
    cells: dict = field(default_factory=dict)
    status: object = None

    def window(self):
        return sorted(self.cells)

    def cell(self, n, delta):
        try:
            return self.cells[(n, delta)]
        except KeyError:
            raise KeyError(f"({n}, {delta}) outside the window N_max={self.N_max}, M={self.M}") from None

    def divisible(self, n, delta, p):
        """Exact test: does ``p`` belong to cell ``(n, delta)``?"""
        a, b = self.points[n + delta], self.points[n]
        if self.mode == "projective":
            return congruent((a.u, a.v), (b.u, b.v), p)
        v = self.cell(n, delta).value
        return v is not None and v % p == 0

    def to_dict(self):
        return {
            "map": self.phi.render(),
            "x0": self.points[0].render(),
            "N_max": self.N_max,
            "M": self.M,
            "mode": self.mode,
            "status": self.status.to_dict() if self.status is not None else None,
            "cells": [self.cells[k].to_dict() for k in self.window()],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "delta", "p", "e", "censored"])
        for k in self.window():
            c = self.cells[k]
            exps = c.factorization.primes if c.factorization else {}
            for p in c.primes:
                w.writerow([c.n, c.delta, p, exps.get(p, ""), int(c.censored)])
        return buf.getvalue()


def _det(a, b):
    return a.u * b.v - b.u * a.v


def build_diff_ledger(
    phi: RationalMap,
    x0,
    N_max: int,
    M: int,
    mode: str = "numerator",
    budget_ms=None,
    digit_cap=DEFAULT_DIGIT_CAP,
    points=None,
) -> DiffLedger:
    """Factor every window cell.  ``points`` may pass a precomputed orbit prefix."""
    if mode not in ("numerator", "projective"):
        raise ValueError(f"unknown ledger mode {mode!r}")
    if points is None:
        points = orbit(phi, x0, N_max, digit_cap)
    L = DiffLedger(phi, x0, N_max, M, mode, budget_ms, points)
    cache = {}

    def fac(v):
        if v not in cache:
            cache[v] = factor(v, budget_ms)
        return cache[v]

    for delta in range(1, M + 1):
        for n in range(0, N_max - delta + 1):
            a, b = points[n + delta], points[n]
            if mode == "numerator":
                if a.v == 0 or b.v == 0:
                    # difference with infinity has no numerator
                    L.cells[(n, delta)] = Cell(n, delta, None, None, (), False)
                    continue
                num = _det(a, b) // math.gcd(_det(a, b), a.v * b.v)
                if num == 0:
                    L.cells[(n, delta)] = Cell(n, delta, 0, None, (), True)
                    continue
                f = fac(num)
                L.cells[(n, delta)] = Cell(n, delta, num, f, tuple(f.support), not f.complete)
            else:
                det = _det(a, b)
                g = math.gcd(a.v, b.v)
                num = det // math.gcd(det, a.v * b.v) if a.v and b.v else det
                cands, censored = set(), False
                f = None
                for part in (num, g):
                    if part in (0, 1, -1):
                        continue
                    pf = fac(part)
                    cands |= set(pf.primes)
                    censored |= not pf.complete
                    if part is num:
                        f = pf
                if num == 0:
                    censored = True
                ok = tuple(sorted(p for p in cands if congruent((a.u, a.v), (b.u, b.v), p)))
                L.cells[(n, delta)] = Cell(n, delta, det, f, ok, censored)
    return L


def primitive_factors(L: DiffLedger, n: int, delta: int) -> list:
    """Primes of cell ``(n, delta)`` dividing no cell ``(m, delta)`` with ``m < n``."""
    c = L.cell(n, delta)
    return [p for p in c.primes if not any(L.divisible(m, delta, p) for m in range(n))]


def doubly_primitive_factors(L: DiffLedger, n: int, delta: int) -> list:
    """Primes of cell ``(n, delta)`` whose every window cell ``(N, D)`` has ``N >= n`` and ``D >= delta``."""
    c = L.cell(n, delta)
    out = []
    for p in c.primes:
        if all(N >= n and D >= delta for (N, D) in L.cells if L.divisible(N, D, p)):
            out.append(p)
    return out


@dataclass
class PrimitiveReport:
    primitive: dict
    doubly_primitive: dict
    censored: list
    note: str = WINDOW_NOTE

    def to_dict(self):
        def enc(d):
            return [{"n": n, "delta": D, "primes": [str(p) for p in ps]} for (n, D), ps in sorted(d.items())]

        return {
            "note": self.note,
            "primitive": enc(self.primitive),
            "doubly_primitive": enc(self.doubly_primitive),
            "censored": [{"n": n, "delta": D} for n, D in self.censored],
        }


def primitive_report(L: DiffLedger) -> PrimitiveReport:
    prim, dbl, cens = {}, {}, []
    for k in L.window():
        prim[k] = primitive_factors(L, *k)
        dbl[k] = doubly_primitive_factors(L, *k)
        if L.cells[k].censored:
            cens.append(k)
    return PrimitiveReport(prim, dbl, cens)


# -- orbit numerators ------------------------------------------------------------


@dataclass
class SequenceLedger:
    """Factored terms ``a_0, ..., a_N`` of an integer sequence (zero terms allowed)."""

    values: list
    factorizations: list

    @property
    def N(self):
        return len(self.values) - 1

    def divisible(self, n, p):
        return self.values[n] % p == 0

    def censored(self, n):
        f = self.factorizations[n]
        return f is None or not f.complete

    def primes(self, n):
        f = self.factorizations[n]
        return f.support if f else []

    def to_dict(self):
        return {
            "values": [str(v) for v in self.values],
            "factorizations": [f.to_dict() if f else None for f in self.factorizations],
        }


def build_sequence_ledger(values, budget_ms=None) -> SequenceLedger:
    return SequenceLedger(list(values), [factor(v, budget_ms) if v else None for v in values])


def build_numerator_ledger(phi, x0, N_max, budget_ms=None, digit_cap=DEFAULT_DIGIT_CAP) -> SequenceLedger:
    """Ledger of ``u_n``, the numerators of ``x_n``."""
    return build_sequence_ledger([p.u for p in orbit(phi, x0, N_max, digit_cap)], budget_ms)


def sequence_primitive(S: SequenceLedger, n: int) -> list:
    """Primes of ``a_n`` dividing no earlier term."""
    return [p for p in S.primes(n) if not any(S.divisible(m, p) for m in range(n))]


def super_primitive_factors(S: SequenceLedger, n: int) -> list:
    """Primes of ``a_n`` dividing no other term of the window."""
    return [p for p in S.primes(n) if not any(S.divisible(m, p) for m in range(S.N + 1) if m != n)]


# -- power persistence ----------------------------------------------------------------


def _valuation(v, p):
    if v == 0:
        return math.inf
    e = 0
    while v % p == 0:
        v //= p
        e += 1
    return e


@dataclass
class PersistenceReport:
    p: int
    n: int
    delta: int
    exponent: int | None
    condition_met: bool
    reasons: list
    checked: list
    violation: tuple | None = None

    @property
    def holds(self):
        return self.condition_met and self.violation is None

    def to_dict(self):
        return {
            "p": str(self.p),
            "n": self.n,
            "delta": self.delta,
            "exponent": self.exponent,
            "condition_met": self.condition_met,
            "reasons": self.reasons,
            "checked": self.checked,
            "violation": list(self.violation) if self.violation else None,
            "note": WINDOW_NOTE,
        }


def persistence_resultant(phi: RationalMap, delta: int):
    """Resultant of the numerators of ``phi^(delta)(t) - t`` and ``phi'(t)``."""
    it = phi.iterate(delta)
    t = UniPoly.gen(phi.ctx)
    a = it.f - t * it.g
    b = phi.f.derivative() * phi.g - phi.f * phi.g.derivative()
    return poly_resultant(a, b)


def power_persistence(L: DiffLedger, p: int, n: int, delta: int, window: int | None = None) -> PersistenceReport:
    """Check that ``p^e || x_{N+delta} - x_N`` for ``n <= N <= window`` once the guards hold.

    Guards: ``p`` of good reduction, the persistence resultant nonzero and
    prime to ``p``, and every ``x_N`` in range ``p``-integral.  If any guard
    fails the report says so and claims nothing.
    """
    if L.mode != "numerator":
        raise ValueError("power persistence needs a numerator ledger")
    last = L.N_max - delta if window is None else min(window, L.N_max - delta)
    reasons = []
    bad = bad_primes(L.phi)
    if p in bad:
        reasons.append("p divides Res(F, G)")
    R = persistence_resultant(L.phi, delta)
    if R == 0:
        reasons.append("numerators of phi^(delta)(t) - t and phi'(t) share a factor")
    elif R.numerator % p == 0:
        reasons.append("p divides the persistence resultant")
    for N in range(n, last + delta + 1):
        if L.points[N].v % p == 0:
            reasons.append(f"x_{N} is not p-integral")
            break
    c = L.cell(n, delta)
    if c.value is None or c.value % p:
        reasons.append("p does not divide the base cell")
    rep = PersistenceReport(p, n, delta, None, not reasons, reasons, [])
    if reasons:
        return rep
    e = _valuation(c.value, p)
    rep.exponent = e
    for N in range(n, last + 1):
        eN = _valuation(L.cell(N, delta).value, p)
        rep.checked.append(N)
        if eN != e:
            rep.violation = (N, eN)
            break
    return rep


# -- density -------------------------------------------------------------------------------


def density_count(P, x) -> int:
    """Number of primes in ``P`` not exceeding ``x``."""
    return sum(1 for p in set(P) if p <= x)


def observed_primes(values, bound):
    """All primes ``<= bound`` dividing some nonzero value (complete: trial division to ``bound``)."""
    from .factor import trial_divide

    out = set()
    for v in values:
        if v:
            found, _ = trial_divide(v, bound)
            out |= set(found)
    return out


def fermat_order_oracle(x) -> set:
    """Primes ``p <= x`` with ``ord_p(2)`` a power of two, i.e. ``p | 2^(2^n) + 1`` for some ``n``."""
    out = set()
    for p in primes_up_to(int(x)):
        if p == 2:
            continue
        o = multiplicative_order(2, p)
        if o >= 2 and o & (o - 1) == 0:
            out.add(p)
    return out
