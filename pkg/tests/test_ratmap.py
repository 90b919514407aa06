import random
from fractions import Fraction

import pytest

from dynlab.errors import DegreeZero, MapSyntaxError, NotFixed, UnsupportedPeriod, ZeroDenominator
from dynlab.exactnum import QQ, BiForm, UniPoly, distinct_linear_factor_count
from dynlab.ratmap import (
    Mobius,
    ProjPoint,
    RationalMap,
    critical_point_count,
    find_marginal_preperiodic,
    fixed_points,
    has_exact_period_point,
    multiplier,
    parse_field,
    parse_map,
)
from dynlab.ratmap.fixed import totally_ramified_points
from dynlab.suites import random_map

t = UniPoly.gen()
x, y = BiForm.x(), BiForm.y()
R = RationalMap.parse
INF = ProjPoint.infinity()


def test_parse_examples():
    phi = R("t^2 - 2*t + 2")
    assert phi.d == 2 and phi.g == UniPoly([1])
    assert R("t^2/(2*t+1)").d == 2
    assert R("(2*t^2+2*t)/(2)") == R("t^2+t")


def test_parse_cancels_common_factors():
    assert R("(t^3-t)/(t^2-t)") == R("t+1")


@pytest.mark.parametrize("text", ["t^2+", "t^^2", "(t+1", "2*/t", "t^2 + s"])
def test_parse_errors_carry_position(text):
    with pytest.raises(MapSyntaxError) as e:
        R(text)
    assert isinstance(e.value, SyntaxError)
    assert e.value.position >= 0


def test_parse_zero_denominator_and_constant():
    with pytest.raises(ZeroDenominator):
        R("t/(0)")
    with pytest.raises(DegreeZero):
        R("(2*t+2)/(t+1)")


def test_parse_over_extension():
    W = parse_field(["w: w^2+w+1"])
    phi = parse_map("(t^2 + w*t)/(w*t + 1)", W)
    assert phi.d == 2 and phi.ctx is W


def test_evaluate_examples():
    assert R("t^2-2*t+2")(3) == 5
    chi = R("t^2/(2*t+1)")
    assert chi(Fraction(-1, 2)) == INF
    assert chi(INF) == INF


def test_evaluate_matches_fractions():
    rng = random.Random(5)
    for _ in range(10):
        phi = random_map(rng, rng.randint(2, 4))
        for _ in range(50):
            v = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
            den = phi.g(v)
            if den == 0:
                continue
            assert phi(v) == ProjPoint.of(phi.f(v) / Fraction(den))


def test_iterate_forms_examples():
    phi = R("t^2-2*t+2")
    F0, G0 = phi.iterate_forms(0)
    assert (F0, G0) == (x, y)
    F1, G1 = phi.iterate_forms(1)
    assert F1 == x**2 - 2 * x * y + 2 * y**2 and G1 == y**2
    assert phi.iterate_forms(3).F.degree == 8


def test_iterate_forms_match_iterates():
    rng = random.Random(11)
    for _ in range(8):
        phi = random_map(rng, 2)
        for r in range(1, 4):
            F, G = phi.iterate_forms(r)
            it = phi.iterate(r)
            assert RationalMap.from_forms(F, G) == it


def test_compose_and_iterate():
    phi = R("t^2+1")
    assert phi.iterate(1) == phi
    psi = R("(t+1)/(t-2)")
    assert phi.compose(psi).d == 2
    assert phi.iterate(3).d == 8


def test_closed_form_examples():
    chi = R("t^2/(2*t+1)").iterate(2).ratfunc()
    from dynlab.exactnum import RatFunc

    one = RatFunc(UniPoly([1]))
    assert one + one / chi == (one + one / RatFunc(t)) ** 4
    psi = R("t^2/(t+1)")
    diff = psi.iterate(2).ratfunc() - psi.ratfunc()
    assert diff.num == -(t**2) and diff.den.degree == 2 and diff.den.lc == 1


def test_conjugate_examples():
    phi = R("t^2+3*t+1")
    assert phi.conjugate(Mobius.identity()) == phi
    assert phi.conjugate(Mobius.affine(1, -2)) == R("t^2-t+1")
    assert R("t^2").conjugate(Mobius(1, 0, 1, 1)) == R("t^2/(2*t+1)")


def test_conjugation_is_an_action():
    rng = random.Random(3)
    for _ in range(10):
        phi = random_map(rng, rng.randint(2, 3))
        s = Mobius(*[rng.choice([-2, -1, 1, 2, 3]) for _ in range(2)], 0, 1)
        while True:
            c = [rng.randint(-3, 3) for _ in range(4)]
            if c[0] * c[3] - c[1] * c[2]:
                break
        tau = Mobius(*c)
        lhs = phi.conjugate(s).conjugate(tau)
        rhs = phi.conjugate(s.compose(tau))
        assert lhs == rhs and lhs.d == phi.d


def test_delta_form_examples():
    inv = R("1/t^2")
    N1 = inv.delta_form(1)
    assert N1 in ((y**3 - x**3).primitive(), (x**3 - y**3).primitive())
    N2 = inv.delta_form(2)
    assert N2.degree == 5
    # psi^(2)(t) - t = t(t^3 - 1): roots 0, cube roots of unity, and infinity
    assert N2.dehomogenize().monic() == (t * (t**3 - 1)).monic()
    assert R("t^2+t+1").delta_form(1).y_valuation() >= 1


def test_fixed_point_examples():
    recs = {r.point.render(): r for r in fixed_points(R("t^2"))}
    assert set(recs) == {"0", "1", "inf"}
    assert recs["0"].multiplier == 0 and recs["1"].multiplier == 2 and recs["inf"].multiplier == 0
    recs = {r.point.render(): r for r in fixed_points(R("t^2/(t+1)"))}
    assert recs["0"].multiplicity == 1 and recs["inf"].multiplicity == 2
    recs = fixed_points(R("t^2/(2*t+1)"))
    assert sorted(r.point.render() for r in recs) == ["-1", "0", "inf"]
    assert all(r.multiplicity == 1 for r in recs)


def test_multiplier_examples():
    assert multiplier(R("t^2"), 0) == 0
    assert multiplier(R("t^2"), INF) == 0
    assert multiplier(R("t^2/(t+1)"), INF) == 1
    with pytest.raises(NotFixed):
        multiplier(R("t^2"), 3)


def test_fixed_census_random():
    rng = random.Random(17)
    for _ in range(12):
        d = rng.randint(2, 4)
        phi = random_map(rng, d)
        recs = fixed_points(phi)
        assert sum(r.weight for r in recs) == d + 1
        for r in recs:
            assert (r.multiplicity > 1) == (r.point.ctx(r.multiplier) == 1)


def test_totally_ramified_examples():
    def pts(text):
        return sorted(p.render() for p in totally_ramified_points(R(text)))

    assert pts("t^3") == ["0", "inf"]
    assert pts("t^2/(2*t+1)") == ["-1", "0"]
    assert pts("t^2-2*t+2") == ["1", "inf"]


def test_critical_point_count():
    assert critical_point_count(R("t^2")) == 2
    assert critical_point_count(R("t^2/(2*t+1)")) == 2
    rng = random.Random(1)
    for _ in range(5):
        assert critical_point_count(random_map(rng, 3)) == 4


def test_exact_period_examples():
    w = has_exact_period_point(R("t^2"), 2)
    assert w and w.witness.dehomogenize().monic() == t**2 + t + 1
    assert not has_exact_period_point(R("(t^2-t)/(t+1)"), 2)
    assert has_exact_period_point(R("1/t^2"), 2)
    with pytest.raises(UnsupportedPeriod):
        has_exact_period_point(R("t^2"), 4)


def test_exact_period_conjugation_invariant():
    rng = random.Random(23)
    maps = [R("(t^2-t)/(t+1)"), R("t^2"), R("t^2-2")]
    for phi in maps:
        base = bool(has_exact_period_point(phi, 2))
        for _ in range(3):
            while True:
                c = [rng.randint(-3, 3) for _ in range(4)]
                if c[0] * c[3] - c[1] * c[2]:
                    break
            assert bool(has_exact_period_point(phi.conjugate(Mobius(*c)), 2)) == base


def test_marginal_preperiodic_examples():
    assert find_marginal_preperiodic(R("t^2-2*t+2"), 1) == 0
    assert find_marginal_preperiodic(R("t^2"), 1) == -1
    nf = find_marginal_preperiodic(R("t^2/(2*t+1)"), 1)
    assert not nf and nf.family == "E_iii"


def test_distinct_linear_factors():
    assert distinct_linear_factor_count(x**2 * y) == 2
    phi = R("t^2-2*t+2")
    assert distinct_linear_factor_count(phi.iterate_forms(4).F) >= 3
    assert distinct_linear_factor_count(R("t^2+t").iterate_forms(5).F) >= 4


def test_resultant_nonzero_after_parse():
    rng = random.Random(8)
    for _ in range(20):
        assert random_map(rng, rng.randint(2, 4)).resultant != 0
    assert QQ(R("t^2/(2*t+1)").resultant) in (1, -1)
