"""Sieves, factorization and smooth-number counts.

P(n) is the largest prime factor of n, with P(1) = 1 so that 1 counts as
y-smooth for every y >= 1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

SEGMENT = 1 << 20
DEFAULT_TRIAL_LIMIT = 10**6
DEFAULT_RHO_ITERATIONS = 2_000_000


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n (Eratosthenes on a byte array)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=8)
def _small_primes(n: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(n))


class SmoothSieve:
    """Smallest-prime-factor table for 2..limit."""

    def __init__(self, limit: int):
        self.limit = max(int(limit), 1)
        spf = np.zeros(self.limit + 1, dtype=np.int32 if self.limit < 2**31 else np.int64)
        for p in range(2, isqrt(self.limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        idx = np.flatnonzero(spf == 0)
        spf[idx] = idx
        spf[0] = 0
        spf[1] = 1
        self.spf = spf

    def factor_pairs(self, n: int) -> list[tuple[int, int]]:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")
        out = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


@lru_cache(maxsize=4)
def shared_sieve(limit: int) -> SmoothSieve:
    return SmoothSieve(limit)


# ---------------------------------------------------------------------------
# Primality and factorization
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# the first 13 prime bases are a proof of primality below this bound
_MR_DETERMINISTIC = 3317044064679887385961981


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


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 40 extra fixed-seed bases above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC:
        return True
    rng = random.Random(n)
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1)) for _ in range(40))


def pollard_rho(n: int, rng: random.Random, max_iterations: int = DEFAULT_RHO_ITERATIONS):
    """A nontrivial factor of composite n (Brent's variant), or None."""
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < max_iterations:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
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
                g = gcd(q, n)
                k += m
            spent += r
            r *= 2
            if spent >= max_iterations:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


@dataclass(frozen=True)
class FactorList:
    n: int
    factors: tuple[tuple[int, int], ...]
    # composite cofactors the budget could not split
    unfactored: tuple[int, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return not self.unfactored

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def tau(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    @property
    def largest(self) -> int:
        """P(n), with P(1) = 1."""
        return self.factors[-1][0] if self.factors else 1

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        for c in self.unfactored:
            out *= c
        return out


def factorize(
    n: int,
    sieve: SmoothSieve | None = None,
    seed: int = 0,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    rho_iterations: int = DEFAULT_RHO_ITERATIONS,
) -> FactorList:
    """Prime factorization of n >= 1.

    Sieve lookup when n is in range, otherwise trial division up to
    ``trial_limit`` followed by seeded Pollard rho. Cofactors that resist
    the rho budget are returned in ``unfactored``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if sieve is not None and n <= sieve.limit:
        return FactorList(n, tuple(sieve.factor_pairs(n)))
    counts: dict[int, int] = {}
    m = n
    bound = min(trial_limit, isqrt(m))
    for p in _small_primes(max(bound, 2)):
        if p > bound:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
            bound = min(bound, isqrt(m))
    leftovers = []
    if m > 1:
        rng = random.Random(seed)
        stack = [m]
        while stack:
            c = stack.pop()
            if c == 1:
                continue
            if is_prime(c):
                counts[c] = counts.get(c, 0) + 1
                continue
            r = _perfect_power_root(c)
            if r is not None:
                root, k = r
                stack.extend([root] * k)
                continue
            d = pollard_rho(c, rng, rho_iterations)
            if d is None:
                leftovers.append(c)
            else:
                stack.extend([d, c // d])
    return FactorList(n, tuple(sorted(counts.items())), tuple(sorted(leftovers)))


def _perfect_power_root(n):
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k)) if n < 2**1000 else _iroot(n, k)
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n:
                return cand, k
        if r < 2:
            break
    return None


def _iroot(n, k):
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def divisors(n: int, fl: FactorList | None = None) -> list[int]:
    fl = fl or factorize(n)
    if not fl.complete:
        raise ValueError(f"cannot list divisors of {n}: factorization incomplete")
    divs = [1]
    for p, e in fl.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def largest_prime_factor(n: int) -> int:
    return factorize(n).largest


def is_smooth(n: int, y: float) -> bool:
    return factorize(n).largest <= y


def has_large_proper_prime_power(n: int, y: float) -> bool:
    """True iff some p^e | n with e >= 2 and p^e > y."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for p, e in factorize(n).factors:
        if e >= 2 and p**e > y:
            return True
    return False


# ---------------------------------------------------------------------------
# Counting functions
# ---------------------------------------------------------------------------


def largest_prime_factors(lo: int, hi: int) -> np.ndarray:
    """P(n) for lo <= n < hi (lo >= 1), one segment at a time."""
    lo = max(lo, 1)
    size = hi - lo
    if size <= 0:
        return np.zeros(0, dtype=np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)
    big = np.ones(size, dtype=np.int64)
    for p in _small_primes(max(isqrt(hi - 1), 2)):
        if p * p > hi - 1:
            break
        start = (-lo) % p
        if start >= size:
            continue
        big[start::p] = p
        pk = p
        while pk <= hi - 1:
            s = (-lo) % pk
            if s < size:
                rem[s::pk] //= p
            pk *= p
    # leftover rem is 1 or a prime above sqrt(hi)
    return np.maximum(big, rem)


def _segments(lo, hi, size=SEGMENT):
    start = lo
    while start < hi:
        yield start, min(start + size, hi)
        start += size


@dataclass(frozen=True)
class PsiReport:
    x: float
    y: float
    count: int
    v: float
    reference: float


def psi(x: float, y: float) -> PsiReport:
    """Psi(x, y) = #{n <= x : P(n) <= y}, exact.

    ``v = log x / log y`` and ``reference = x exp(-v log v)`` are carried
    for comparison only.
    """
    if x < 1 or y < 1:
        raise ValueError("psi needs x >= 1 and y >= 1")
    X = int(math.floor(x))
    count = 0
    for lo, hi in _segments(1, X + 1):
        count += int(np.count_nonzero(largest_prime_factors(lo, hi) <= y))
    if y > 1 and x > 1:
        v = math.log(x) / math.log(y)
        reference = x * math.exp(-v * math.log(v)) if v > 0 else float(x)
    else:
        v, reference = math.inf, 0.0
    return PsiReport(x, y, count, v, reference)


def pi_smooth(x: float, y: float) -> int:
    """Pi(x, y): primes p <= x with p^2 - 1 y-smooth."""
    if x < 2 or y < 2:
        raise ValueError("pi_smooth needs x, y >= 2")
    return len(smooth_shifted_primes(x, y))


def smooth_shifted_primes(x: float, y: float) -> list[int]:
    """The primes counted by ``pi_smooth``."""
    X = int(math.floor(x))
    primes = primes_up_to(X)
    out = []
    for lo, hi in _segments(2, X + 1):
        seg = primes[(primes >= lo) & (primes < hi)]
        if not len(seg):
            continue
        base = lo - 1
        # table covers p - 1 and p + 1 for every p in [lo, hi)
        table = largest_prime_factors(base, hi + 1)
        worst = np.maximum(table[seg - 1 - base], table[seg + 1 - base])
        out.extend(int(p) for p in seg[worst <= y])
    return out


@dataclass(frozen=True)
class PiSmoothRow:
    y: int
    v: float
    x: int
    count: int
    # count / y^v, tabulated only
    ratio: float


def pi_smooth_table(ys, vs=(1.1, 4 / 3)) -> list[PiSmoothRow]:
    """Pi(y^v, y) / y^v over a grid of y and v."""
    rows = []
    for y in ys:
        for v in vs:
            x = int(math.floor(y**v))
            count = pi_smooth(x, y) if x >= 2 else 0
            rows.append(PiSmoothRow(int(y), v, x, count, count / y**v))
    return rows


def log_iter(x: float, times: int = 1) -> float:
    """log_1 x = max(log x, 1), log_l x = log_1(log_{l-1} x)."""
    for _ in range(times):
        x = max(math.log(x), 1.0) if x > 0 else 1.0
    return x


def big_l(x: float) -> float:
    """L(x) = exp(sqrt(log_1 x * log_2 x))."""
    if x < 1:
        raise ValueError("L(x) needs x >= 1")
    return math.exp(math.sqrt(log_iter(x, 1) * log_iter(x, 2)))
