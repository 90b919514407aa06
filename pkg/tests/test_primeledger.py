import math
from fractions import Fraction
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynlab.orbit import diff_numerator, orbit
from dynlab.primeledger import (
    build_diff_ledger,
    build_numerator_ledger,
    build_sequence_ledger,
    density_count,
    doubly_primitive_factors,
    factor,
    fermat_order_oracle,
    is_prime,
    multiplicative_order,
    power_persistence,
    primes_up_to,
    primitive_factors,
    primitive_report,
    sequence_primitive,
    super_primitive_factors,
)
from dynlab.ratmap import RationalMap

R = RationalMap.parse
FERMAT = R("t^2-2*t+2")


def test_factor_examples():
    assert factor(65537).primes == {65537: 1}
    f = factor(2**64 + 1)
    assert f.primes == {274177: 1, 67280421310721: 1} and f.complete
    f = factor(-12)
    assert f.sign == -1 and f.primes == {2: 2, 3: 1}
    with pytest.raises(ValueError):
        factor(0)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=-(10**30), max_value=10**30).filter(lambda n: n != 0))
def test_factor_reassembles(n):
    f = factor(n, budget_ms=200)
    assert f.value() == n
    assert all(is_prime(p) for p in f.primes)


def test_factor_is_deterministic_and_honest():
    n = (2**127 - 1) * (2**89 - 1) * (10**40 + 121)
    a, b = factor(n, budget_ms=1), factor(n, budget_ms=1)
    assert a == b and a.value() == n
    # a tiny budget may leave a cofactor, but nothing is dropped
    assert math.prod(p**e for p, e in a.primes.items()) * a.cofactor == n


def test_factor_semiprime_via_rho():
    p, q = 1000003, 998244353
    assert factor(p * q * q).primes == {p: 1, q: 2}


def test_is_prime_against_sieve():
    ps = set(primes_up_to(20000))
    assert all(is_prime(n) == (n in ps) for n in range(20000))
    # strong pseudoprimes to several bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**127 - 1) and not is_prime(2**128 + 1)
    # F_5 and F_6 are composite although every Fermat number is a base-2 probable prime
    assert not is_prime(2**32 + 1) and not is_prime(2**64 + 1)


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(2, 641) == 64
    for p in primes_up_to(300)[1:]:
        o = multiplicative_order(2, p)
        assert pow(2, o, p) == 1 and all(pow(2, k, p) != 1 for k in range(1, o))
    with pytest.raises(ValueError):
        multiplicative_order(4, 2)


def test_diff_ledger_examples():
    L = build_diff_ledger(R("t^2/(2*t+1)"), 1, 5, 1)
    assert [abs(L.cell(n, 1).value) for n in range(5)] == [2 ** (2**n) for n in range(5)]
    L = build_diff_ledger(R("t^2/(t+1)"), 1, 6, 1)
    assert {abs(L.cell(n, 1).value) for n in range(6)} == {1}
    L = build_diff_ledger(FERMAT, 3, 4, 1)
    assert L.cell(1, 1).value == 12 and L.cell(1, 1).factorization.primes == {2: 2, 3: 1}


def test_primitive_examples():
    L = build_diff_ledger(FERMAT, 3, 5, 1)
    assert primitive_factors(L, 2, 1) == [5]
    L = build_diff_ledger(R("t^2/(2*t+1)"), 1, 6, 1)
    assert all(primitive_factors(L, n, 1) == [] for n in range(1, 6))
    L = build_diff_ledger(R("t^2+1"), 1, 11, 1, budget_ms=500)
    assert all(primitive_factors(L, n, 1) for n in range(1, 11))


def test_doubly_primitive_subset_of_primitive():
    L = build_diff_ledger(R("t^2+1"), 1, 8, 3, budget_ms=200)
    rep = primitive_report(L)
    for k in L.window():
        assert set(rep.doubly_primitive[k]) <= set(rep.primitive[k])
    assert sum(1 for k in L.window() if rep.doubly_primitive[k]) >= len(L.window()) // 2


def test_doubly_primitive_absent_for_conjugate_inverse_square():
    from dynlab.ratmap import Mobius

    phi = R("1/t^2").conjugate(Mobius(1, 0, 1, -1))
    L = build_diff_ledger(phi, 2, 10, 2)
    assert all(doubly_primitive_factors(L, n, 2) == [] for n in range(2, 9))


def test_projective_vs_numerator_consistency():
    phi = R("(t^2+3)/(2*t-1)")
    pts = orbit(phi, 2, 7)
    Ln = build_diff_ledger(phi, 2, 7, 2, points=pts, budget_ms=100)
    Lp = build_diff_ledger(phi, 2, 7, 2, mode="projective", points=pts, budget_ms=100)
    for k in Ln.window():
        n, D = k
        for p in primes_up_to(500):
            if (pts[n].v * pts[n + D].v) % p == 0:
                continue
            assert Lp.divisible(n, D, p) == Ln.divisible(n, D, p)
        for p in Lp.cell(n, D).primes:
            assert Lp.divisible(n, D, p)


def test_ledger_reproducible_and_serialisable():
    a = build_diff_ledger(FERMAT, 3, 5, 2).to_json()
    b = build_diff_ledger(FERMAT, 3, 5, 2).to_json()
    assert a == b
    csv = build_diff_ledger(FERMAT, 3, 3, 1).to_csv().splitlines()
    assert csv[0] == "n,delta,p,e,censored" and "1,1,2,2,0" in csv


def test_super_primitive():
    S = build_numerator_ledger(FERMAT, 3, 5)
    for n in range(6):
        assert super_primitive_factors(S, n) == S.primes(n)
    S = build_numerator_ledger(R("t^2/(2*t+1)"), 1, 5)
    assert all(super_primitive_factors(S, n) == [] for n in range(6))
    S = build_numerator_ledger(R("t^2-t+1"), 2, 7, budget_ms=200)
    assert any(super_primitive_factors(S, n) for n in range(4, 8))
    for n in range(8):
        assert set(super_primitive_factors(S, n)) <= set(sequence_primitive(S, n))


def test_power_persistence():
    L = build_diff_ledger(R("t^2+1"), 1, 9, 1, budget_ms=200)
    p = primitive_factors(L, 1, 1)[0]
    rep = power_persistence(L, p, 1, 1)
    assert rep.condition_met and rep.holds and rep.checked == list(range(1, 9))
    # a prime where the base cell is not divisible: guard path, no claim
    rep = power_persistence(L, 10007, 1, 1)
    assert not rep.condition_met and rep.exponent is None


def test_power_persistence_fermat_difference_map():
    L = build_diff_ledger(R("t^2/(2*t+1)"), 1, 6, 1)
    rep = power_persistence(L, 2, 0, 1)
    # exponents 2^n change along the window, so either the guard fires or the report shows the violation
    assert not rep.holds
    assert rep.violation is not None or not rep.condition_met


def test_density():
    assert density_count(set(), 10**5) == 0
    assert density_count({3, 5, 17, 257, 641, 65537, 6700417}, 10**5) == 6
    assert fermat_order_oracle(10**5) == {3, 5, 17, 257, 641, 65537}


def test_fermat_prime_divisors_match_order_oracle():
    # every prime p < 10^6 dividing some F_n has ord_p(2) = 2^(n+1)
    S = build_sequence_ledger([2 ** (2**n) + 1 for n in range(12)], budget_ms=20)
    for n in range(12):
        for p in S.primes(n):
            if p < 10**6:
                assert multiplicative_order(2, p) == 2 ** (n + 1)


def test_sequence_ledger_censoring_flag():
    n = (2**521 - 1) * (2**607 - 1)
    S = build_sequence_ledger([n], budget_ms=1)
    assert S.censored(0) or set(S.primes(0)) == {2**521 - 1, 2**607 - 1}


def test_random_diff_ledger_cells_reassemble():
    rng = random.Random(4)
    from dynlab.suites import random_map

    phi = random_map(rng, 2, 3)
    L = build_diff_ledger(phi, 1, 6, 2, budget_ms=50)
    for c in L.cells.values():
        if c.value not in (None, 0):
            assert c.factorization.value() == c.value


def _support(n):
    return set(factor(n, budget_ms=200).primes) if n not in (0, 1, -1) else set()


@pytest.mark.parametrize("text,sigma", [("t^2/(t+1)", None), ("t^2/(2*t+1)", None), ("t^2/(2*t+1)", (3, 5)), ("t^2/(t+1)", (-2, 1))])
def test_family_one_constant_support_and_denominator_primes(text, sigma):
    from dynlab.ratmap import Mobius

    phi = R(text)
    x0 = 1
    if sigma:
        tau = Mobius.affine(*sigma)
        phi = phi.conjugate(tau)
        x0 = tau.inverse()(1).value
    pts = orbit(phi, x0, 9)
    supports = [_support(diff_numerator(pts[n + 1], pts[n])) for n in range(1, 9)]
    assert all(s == supports[0] for s in supports)
    S = build_sequence_ledger([p.v for p in pts], budget_ms=200)
    for n in range(2, 9):
        prim = sequence_primitive(S, n)
        # an unsplit cofactor (F_7 inside 2^256 - 1) censors the index rather than refuting it
        assert any(pts[n + 1].v % p == 0 for p in prim) or S.censored(n), n


def test_catalog_maps_difference_support_inclusion():
    # primes of x_{n+D} - x_n divide the projective x_{n+1} - x_n, outside bad primes and u_0 v_0
    from dynlab.classify import KISAKA_IDS, KISAKA_PARAM, KISAKA_PERIOD, kisaka_map
    from dynlab.exactnum import QQ
    from dynlab.orbit import bad_primes, classify_orbit

    checked = 0
    for cid in KISAKA_IDS:
        for a in (1, 2, 3) if cid in KISAKA_PARAM else (None,):
            phi = kisaka_map(cid, a)
            if phi.ctx is not QQ:
                continue
            D = KISAKA_PERIOD[cid]
            bad = math.prod(bad_primes(phi))
            for x0 in (2, Fraction(3, 5), Fraction(-4, 3)):
                if classify_orbit(phi, x0).kind != "wandering":
                    continue
                pts = orbit(phi, x0, 6 + D)
                for n in range(6):
                    a_ = diff_numerator(pts[n + D], pts[n])
                    b_ = (pts[n + 1].u * pts[n].v - pts[n].u * pts[n + 1].v) * bad * pts[0].u * pts[0].v
                    g = math.gcd(a_, b_)
                    while g > 1:
                        a_ //= g
                        g = math.gcd(a_, g)
                    assert abs(a_) == 1, (cid, a, x0, n)
                    checked += 1
    assert checked > 100
