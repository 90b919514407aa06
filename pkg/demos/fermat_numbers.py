"""Fermat numbers as the orbit of 3 under t^2 - 2t + 2, and a map whose
orbit differences never acquire a new prime."""

from dynlab import RationalMap, classify_orbit
from dynlab.orbit import diff_numerator, orbit
from dynlab.primeledger import build_diff_ledger, primitive_factors

phi = RationalMap.parse("t^2 - 2*t + 2")
pts = orbit(phi, 3, 6)
for n, p in enumerate(pts):
    print(f"F_{n} = {p.render()}")

print(classify_orbit(phi, 3).to_dict())

# conjugating t^2 by t/(t+1) gives t^2/(2t+1); from x_0 = 1 the differences are
# all powers of 2, so there is nothing primitive to find
chi = RationalMap.parse("t^2/(2*t+1)")
pts = orbit(chi, 1, 5)
print([p.render() for p in pts])
print([diff_numerator(pts[n + 1], pts[n]) for n in range(5)])

L = build_diff_ledger(chi, 1, 6, 1)
print("primitive primes:", [primitive_factors(L, n, 1) for n in range(1, 6)])
