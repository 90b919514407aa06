import random

import pytest

from dynlab.classify import (
    KISAKA_IDS,
    KISAKA_PARAM,
    KISAKA_PERIOD,
    in_B,
    in_E,
    in_F1,
    in_F2,
    in_F3,
    in_T,
    kisaka_map,
)
from dynlab.errors import ParamViolation, UnsupportedPeriod
from dynlab.exactnum import QQ
from dynlab.orbit import classify_orbit
from dynlab.ratmap import Mobius, RationalMap, has_exact_period_point, parse_field, parse_map
from dynlab.suites import random_map

R = RationalMap.parse


def recheck(phi, tag):
    """A witness sigma must conjugate phi onto the canonical form."""
    if tag.sigma is None:
        return True
    return phi.over(tag.sigma.ctx).conjugate(tag.sigma) == tag.canonical.over(tag.sigma.ctx)


def test_in_T_examples():
    assert in_T(R("t^2/(2*t+1)")).kind == "T_i"
    assert in_T(R("5/t^3")).kind == "T_ii"
    assert not in_T(R("t^2-2*t+2"))


def test_in_T_forces_periodic_zero():
    for text in ("t^2/(2*t+1)", "5/t^3", "t^3/(t+4)", "1/t^2"):
        phi = R(text)
        assert in_T(phi)
        st = classify_orbit(phi, 0)
        assert st.kind == "preperiodic" and st.tail == 0 and st.period in (1, 2)


def test_in_E_examples():
    assert in_E(R("t + 1/(t^2+1)")).kind == "E_i"
    tag = in_E(R("t^3/(t^2+1)"))
    assert tag.kind == "E_ii" and recheck(R("t^3/(t^2+1)"), tag)
    assert in_E(R("t^2/(2*t+1)")).kind == "E_iii"
    assert not in_E(R("t^2+1"))


def test_in_F1_examples():
    assert in_F1(R("t^2/(t+1)")).kind == "F1_a"
    sigma = Mobius.affine(3, 5)
    phi = R("t^2/(2*t+1)").conjugate(sigma)
    tag = in_F1(phi)
    assert tag.kind == "F1_b" and recheck(phi, tag)
    assert not in_F1(R("t^2+1"))


def test_in_F1_affine_invariance():
    rng = random.Random(4)
    for text in ("t^2/(t+1)", "t^2/(2*t+1)", "t^2+1"):
        base = in_F1(R(text)).kind
        for _ in range(4):
            tau = Mobius.affine(rng.choice([-3, -1, 2, 5]), rng.randint(-4, 4))
            phi = R(text).conjugate(tau)
            tag = in_F1(phi)
            assert tag.kind == base and recheck(phi, tag)


def test_in_B_examples():
    assert in_B(R("(t^2-t)/(t+1)"), 2).kind == "B_2_2"
    assert not in_B(R("t^2"), 2)
    W = parse_field(["w: w^2+w+1"])
    assert in_B(parse_map("(t^2+w*t)/(w*t+1)", W), 3).kind == "B_3_2"
    with pytest.raises(UnsupportedPeriod):
        in_B(R("t^2"), 5)


def test_in_F2_F3_examples():
    assert in_F2(R("1/t^2")).kind == "F2_conj_inv_square"
    phi = R("1/t^2").conjugate(Mobius(1, 1, 1, -1))
    tag = in_F2(phi)
    assert tag.kind == "F2_conj_inv_square" and recheck(phi, tag)
    assert not in_F2(R("t^2+1")) and not in_F3(R("t^2+1"))


def test_kisaka_examples():
    assert kisaka_map("kisaka-2-2", 1) == R("(t^2-t)/(t+1)")
    assert kisaka_map("kisaka-2-4-1") == R("(t^4-t)/(-2*t^3+1)")
    phi = kisaka_map("kisaka-3-2-a")
    assert phi.d == 2 and phi.ctx is not QQ


def test_kisaka_param_violations():
    with pytest.raises(ParamViolation):
        kisaka_map("kisaka-2-2", -1)
    for cid in ("kisaka-2-3-a", "kisaka-2-3-b", "kisaka-2-3-c"):
        with pytest.raises(ParamViolation):
            kisaka_map(cid, 0)
    with pytest.raises((ParamViolation, KeyError, ValueError)):
        kisaka_map("kisaka-9-9")


@pytest.mark.parametrize("cid", KISAKA_IDS)
def test_kisaka_catalog_lacks_exact_period(cid):
    params = (1, 3, -2) if cid in KISAKA_PARAM else (None,)
    for p in params:
        phi = kisaka_map(cid, p)
        assert not has_exact_period_point(phi, KISAKA_PERIOD[cid])


def test_random_maps_have_exact_period_points():
    rng = random.Random(9)
    for d, delta in ((2, 2), (3, 2), (4, 2), (2, 3)) * 3:
        phi = random_map(rng, d, 4)
        assert has_exact_period_point(phi, delta)


def test_no_exact_period_gap_outside_baker_pairs():
    # raising InternalInconsistency would mean a contradiction with the classification
    rng = random.Random(13)
    for d, delta in ((5, 2), (6, 2), (3, 3), (4, 3)):
        phi = random_map(rng, d, 3)
        assert in_B(phi, delta).kind is None
