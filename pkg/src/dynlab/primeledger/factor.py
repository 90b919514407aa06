"""Integer factorisation with an explicit, deterministic budget.

Trial division runs to 10**6 (blockwise, via gcds with prime products so huge
inputs stay cheap).  What is left goes through perfect-power detection and
Brent's rho with fixed polynomial seeds.  The rho budget is given in
milliseconds but converted to a step count by a fixed cost model, so the same
budget always gives the same answer regardless of machine load.  Anything that
survives is reported as ``cofactor``, never dropped.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET_MS = 2000
# rho steps per millisecond for a 64-bit modulus; larger moduli pay ~bits**1.6
RHO_STEPS_PER_MS = 400
_BLOCK = 256
# cofactors longer than this are not tested or split (a single modexp is already slow)
MAX_SPLIT_BITS = 4096

# first 12 primes: a deterministic Miller-Rabin witness set below this bound
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, b in enumerate(sieve) if b)


@lru_cache(maxsize=None)
def _prime_blocks(limit: int):
    ps = primes_up_to(limit)
    return tuple((ps[i : i + _BLOCK], math.prod(ps[i : i + _BLOCK])) for i in range(0, len(ps), _BLOCK))


# -- primality -------------------------------------------------------------


def _strong_probable_prime(n, a):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a, n):
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n):
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and math.isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x):
        return (x + n) // 2 if x % 2 else x // 2

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V) % n, half(D * U + P * V) % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24 (12 Miller-Rabin bases), Baillie-PSW above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas(n)


# -- splitting ---------------------------------------------------------------


def integer_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n):
    for k in primes_up_to(n.bit_length()):
        r = integer_root(n, k)
        if r**k == n:
            return r, k
    return None


def _brent(n, c, steps):
    """One Brent rho run with ``x -> x^2 + c``; returns a factor, ``n`` on cycle failure, or None."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            used += min(m, r - k + m)
            if used > steps:
                return None
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def rho_steps(budget_ms: float, n: int) -> int:
    bits = max(64, n.bit_length())
    return max(16, int(budget_ms * RHO_STEPS_PER_MS * (64 / bits) ** 1.6))


@dataclass
class Factorization:
    """``sign * prod(p**e) * cofactor``; ``cofactor == 1`` means complete."""

    sign: int
    primes: dict = field(default_factory=dict)
    cofactor: int = 1

    @property
    def complete(self):
        return self.cofactor == 1

    @property
    def support(self):
        return sorted(self.primes)

    def value(self):
        return self.sign * math.prod(p**e for p, e in self.primes.items()) * self.cofactor

    def to_dict(self):
        return {
            "sign": self.sign,
            "primes": {str(p): e for p, e in sorted(self.primes.items())},
            "cofactor": str(self.cofactor),
            "complete": self.complete,
        }

    def __repr__(self):
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(self.primes.items()))
        if self.cofactor != 1:
            body = f"{body} * [{self.cofactor}]" if body else f"[{self.cofactor}]"
        return f"Factorization({'-' if self.sign < 0 else ''}{body or '1'})"


def budget_from_env(default=DEFAULT_BUDGET_MS):
    raw = os.environ.get("DYNLAB_FACTOR_BUDGET_MS")
    return float(raw) if raw else default


def trial_divide(n: int, limit: int = TRIAL_LIMIT):
    """Strip all primes <= limit from |n|; returns (exponent dict, remaining part)."""
    n = abs(n)
    found = {}
    for block, prod in _prime_blocks(limit):
        if n == 1:
            break
        if math.gcd(n, prod) == 1:
            continue
        for p in block:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found[p] = e
    return found, n


def factor(n: int, budget_ms: float | None = None, trial_limit: int = TRIAL_LIMIT) -> Factorization:
    """Factor a nonzero integer.

    >>> factor(-12)
    Factorization(-2^2 * 3)
    >>> factor(2**64 + 1).primes
    {274177: 1, 67280421310721: 1}
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    if budget_ms is None:
        budget_ms = budget_from_env()
    sign = -1 if n < 0 else 1
    primes, rest = trial_divide(n, trial_limit)
    out = Factorization(sign, primes)
    if rest == 1:
        return out
    steps_left = [rho_steps(budget_ms, rest)]
    leftovers = []
    _split(rest, 1, out.primes, leftovers, steps_left, trial_limit)
    out.primes = dict(sorted(out.primes.items()))
    out.cofactor = math.prod(leftovers)
    return out


def _add(primes, p, e):
    primes[p] = primes.get(p, 0) + e


def _split(n, mult, primes, leftovers, steps_left, trial_limit):
    if n == 1:
        return
    if n.bit_length() > MAX_SPLIT_BITS:
        leftovers.append(n**mult)
        return
    if n <= trial_limit * trial_limit or is_prime(n):
        if n <= trial_limit * trial_limit and not is_prime(n):
            raise AssertionError(f"{n} should have been removed by trial division")
        _add(primes, n, mult)
        return
    pp = _perfect_power(n)
    if pp is not None:
        r, k = pp
        _split(r, mult * k, primes, leftovers, steps_left, trial_limit)
        return
    c = 1
    while steps_left[0] > 0:
        budget = steps_left[0]
        g = _brent(n, c, budget)
        if g is None:
            steps_left[0] = 0
            break
        # charge a fixed slice per attempt so the outcome stays deterministic
        steps_left[0] -= max(1, budget // 8)
        if 1 < g < n:
            a, b = g, n // g
            h = math.gcd(a, b)
            if h > 1:
                # repeated factor: peel it off first
                while a % h == 0 and b % h == 0:
                    a //= h
                    b //= h
                    _split(h, 2 * mult, primes, leftovers, steps_left, trial_limit)
            _split(a, mult, primes, leftovers, steps_left, trial_limit)
            _split(b, mult, primes, leftovers, steps_left, trial_limit)
            return
        c += 1
    leftovers.append(n**mult)


def prime_support(n: int, budget_ms: float | None = None):
    """Primes of |n| as found within budget, plus the residual cofactor."""
    f = factor(n, budget_ms)
    return f.support, f.cofactor


def multiplicative_order(a: int, p: int) -> int:
    """Order of ``a`` in (Z/p)^* for a prime ``p`` not dividing ``a``."""
    if a % p == 0:
        raise ValueError("a must be a unit mod p")
    order = p - 1
    for q, e in factor(p - 1).primes.items():
        for _ in range(e):
            if pow(a, order // q, p) == 1:
                order //= q
            else:
                break
    return order
