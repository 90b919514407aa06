"""Count primes below x that divide some Fermat number, and compare with the
order-of-2 criterion p | F_n iff ord_p(2) = 2^(n+1)."""

import math

from dynlab import RationalMap
from dynlab.orbit import orbit
from dynlab.primeledger import build_sequence_ledger, density_count, fermat_order_oracle

pts = orbit(RationalMap.parse("t^2-2*t+2"), 3, 16)
S = build_sequence_ledger([p.u for p in pts], budget_ms=50)
observed = set().union(*(S.primes(n) for n in range(S.N + 1)))

for k in range(2, 6):
    x = 10**k
    print(f"x=10^{k}: ledger {density_count(observed, x)}, oracle {len(fermat_order_oracle(x))}, sqrt(x)/log x = {math.sqrt(x) / math.log(x):.1f}")
