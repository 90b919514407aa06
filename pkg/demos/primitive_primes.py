"""Scan the orbit of 1 under t^2 + 1 for primitive prime divisors of
x_{n+1} - x_n, and look at how a primitive prime spreads through the ledger."""

from dynlab import RationalMap
from dynlab.primeledger import build_diff_ledger, power_persistence, primitive_report

phi = RationalMap.parse("t^2 + 1")
L = build_diff_ledger(phi, 1, 10, 3, budget_ms=200)

rep = primitive_report(L)
for n in range(1, 8):
    print(n, "primitive", rep.primitive[(n, 1)], "doubly", rep.doubly_primitive[(n, 1)])

# which cells does the first primitive prime of x_2 - x_1 divide?
p = rep.primitive[(1, 1)][0]
print(p, sorted(k for k in L.cells if L.divisible(*k, p)))
print(power_persistence(L, p, 1, 1).to_dict())

print(L.to_csv().splitlines()[:8])
