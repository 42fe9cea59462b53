"""Integer utilities: primality, factorization and prime-divisor sets."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import FactorizationTimeout

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_ITERATIONS = 2**22
DEFAULT_RHO_SEEDS = 8

# Deterministic for n < 3.3e24, which covers 2^64.
_SMALL_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_EXTRA_ROUNDS = 64  # 4^-64 = 2^-128


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> tuple[int, ...]:
    """All primes <= bound (sieve of Eratosthenes)."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2^64, error < 2^-128 above."""
    if n < 2:
        return False
    for p in _SMALL_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in _SMALL_WITNESSES):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    return all(
        _strong_probable_prime(n, rng.randrange(2, n - 1), d, s)
        for _ in range(_EXTRA_ROUNDS)
    )


def _brent(n: int, seed: int, budget: int) -> int | None:
    """One Pollard rho run with Brent's cycle detection; a proper factor or None."""
    rng = random.Random(seed)
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    iterations = 0
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
        iterations += r
        r *= 2
        if iterations > budget:
            return None
    if g == n:
        # batched gcd overshot; backtrack one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, budget: int, seeds: int) -> int | None:
    if n % 2 == 0:
        return 2
    r = math.isqrt(n)
    if r * r == n:
        return r
    for seed in range(seeds):
        f = _brent(n, seed, budget)
        if f is not None:
            return f
    return None


@dataclass(frozen=True)
class Factorization:
    """sign * prod(p**e) with primes strictly increasing."""

    factors: tuple[tuple[int, int], ...]
    sign: int = 1

    @property
    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.factors)

    def __str__(self):
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_iterations: int = DEFAULT_RHO_ITERATIONS,
    rho_seeds: int = DEFAULT_RHO_SEEDS,
) -> Factorization:
    """Complete factorization of a nonzero integer.

    Trial division by primes up to ``trial_bound``, then Pollard rho (Brent)
    on what remains. Raises FactorizationTimeout, carrying the partial
    result, when a composite cofactor survives every seed.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    counts: dict[int, int] = {}
    for p in primes_up_to(trial_bound):
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    stuck = []
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            counts[c] = counts.get(c, 0) + 1
            continue
        f = _split(c, rho_iterations, rho_seeds)
        if f is None:
            stuck.append(c)
        else:
            stack.extend((f, c // f))
    result = Factorization(tuple(sorted(counts.items())), sign)
    if stuck:
        raise FactorizationTimeout(n, result, sorted(stuck))
    return result


class _AllPrimes:
    """Sentinel for 'every prime': the prime-divisor set of 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AllPrimes"

    def __contains__(self, p):
        return True

    def __reduce__(self):
        return (_AllPrimes, ())


AllPrimes = _AllPrimes()


def intersect(a, b):
    """Intersection of two prime sets, AllPrimes acting as the identity."""
    if a is AllPrimes:
        return b
    if b is AllPrimes:
        return a
    return frozenset(a) & frozenset(b)


def union(a, b):
    if a is AllPrimes or b is AllPrimes:
        return AllPrimes
    return frozenset(a) | frozenset(b)


def prime_divisors(n: int, **kwargs):
    """Prime divisors of n; AllPrimes when n == 0."""
    if n == 0:
        return AllPrimes
    return factorize(n, **kwargs).primes


def divisor_set_intersection(values, **kwargs):
    """Intersect the prime-divisor sets of ``values``; zeros contribute AllPrimes.

    A prime divides every nonzero value iff it divides their gcd, so only the
    gcd is factored; the values themselves may be far out of reach.
    """
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return prime_divisors(g, **kwargs)
