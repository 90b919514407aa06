"""Membership tests for the exceptional families, and the catalog of maps
with no point of exact period 2 or 3."""

from dynlab import RationalMap, in_B, in_E, in_F1, in_F2, in_T, kisaka_map
from dynlab.classify import KISAKA_IDS, KISAKA_PARAM, KISAKA_PERIOD
from dynlab.ratmap import Mobius, has_exact_period_point

R = RationalMap.parse

for text in ("t^2/(2*t+1)", "t^2/(t+1)", "1/t^2", "t^2+1"):
    phi = R(text)
    tags = [f(phi).kind for f in (in_T, in_E, in_F1, in_F2)]
    print(f"{text:14} {tags}")

# the tests see through a change of coordinates
phi = R("1/t^2").conjugate(Mobius(1, 1, 1, -1))
tag = in_F2(phi)
print(phi.render(), tag.kind, tag.sigma)

for cid in KISAKA_IDS:
    phi = kisaka_map(cid, 2 if cid in KISAKA_PARAM else None)
    delta = KISAKA_PERIOD[cid]
    print(cid, delta, bool(has_exact_period_point(phi, delta)), in_B(phi, delta).kind)
