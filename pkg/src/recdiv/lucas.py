"""Lucas sequences u_0 = 0, u_1 = 1, u_{n+2} = a1 u_{n+1} + a2 u_n.

The rank of apparition z(m) is the least l >= 1 with m | u_l; for m
coprime to a2 it controls divisibility completely: m | u_n iff z(m) | n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

from recdiv.errors import DomainError
from recdiv.modular import term_mod
from recdiv.recurrence import RecurrenceSpec, is_degenerate
from recdiv.smoothness import divisors, factorize, primes_up_to


@dataclass(frozen=True)
class LucasSpec:
    a1: int
    a2: int

    @property
    def delta(self) -> int:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def recurrence(self) -> RecurrenceSpec:
        return RecurrenceSpec((self.a1, self.a2), (0, 1))


def lucas_spec(a1: int, a2: int) -> LucasSpec:
    """Validated Lucas pair."""
    if a2 == 0:
        raise DomainError("a2 must be nonzero")
    if gcd(a1, a2) != 1:
        raise DomainError(f"gcd(a1, a2) = {gcd(a1, a2)}, must be 1")
    ls = LucasSpec(a1, a2)
    if ls.delta == 0:
        raise DomainError("discriminant a1^2 + 4 a2 is zero")
    degenerate, order = is_degenerate(ls.recurrence.char_poly)
    if degenerate:
        raise DomainError(f"degenerate pair: root ratio is a root of unity of order {order}")
    return ls


FIBONACCI = LucasSpec(1, 1)
PELL = LucasSpec(2, 1)


@dataclass(frozen=True)
class TIndexResult:
    """T(p) together with how it was found.

    ``witness`` is the exponent tuple (x_2, ..., x_k) of the first vanishing
    determinant; ``capped`` means the search stopped at the cap with t = cap.
    """

    p: int
    t: int
    witness: tuple[int, ...] | None
    capped: bool
    divides_discriminant: bool = False


@dataclass(frozen=True)
class ApparitionIndex:
    modulus: int
    z: int


def legendre(a: int, p: int) -> int:
    """Kronecker symbol (a|p) for prime p (p = 2 included)."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _check_prime_coprime(ls, p):
    if ls.a2 % p == 0:
        raise DomainError(f"p = {p} divides a2 = {ls.a2}; z is undefined")


def z_prime(ls: LucasSpec, p: int) -> ApparitionIndex:
    """z(p) for a prime p not dividing a2.

    p | delta gives z = p. Otherwise z divides p - (delta|p), so only those
    divisors are tried, in increasing order.
    """
    _check_prime_coprime(ls, p)
    seq = ls.recurrence
    if ls.delta % p == 0:
        candidates = [p]
    else:
        candidates = divisors(p - legendre(ls.delta, p))
    for d in candidates:
        if term_mod(seq, d, p) == 0:
            return ApparitionIndex(p, d)
    return ApparitionIndex(p, _scan(seq, p))


def _scan(seq, m, limit=None):
    u_prev, u = 0, 1
    a1, a2 = seq.coeffs
    limit = limit or 6 * m * m + 6
    for n in range(1, limit + 1):
        if u % m == 0:
            return n
        u_prev, u = u, (a1 * u + a2 * u_prev) % m
    raise ArithmeticError(f"no index of appearance found for {m} within {limit}")


def z_prime_power(ls: LucasSpec, p: int, e: int) -> ApparitionIndex:
    """z(p^e) = z(p) p^j for the least j in [0, e-1] with p^e | u_{z(p) p^j}."""
    if e < 1:
        raise DomainError("exponent must be >= 1")
    _check_prime_coprime(ls, p)
    zp = z_prime(ls, p).z
    q = p**e
    seq = ls.recurrence
    for j in range(e):
        cand = zp * p**j
        if term_mod(seq, cand, q) == 0:
            return ApparitionIndex(q, cand)
    raise ArithmeticError(f"z({p}^{e}) does not divide z({p}) {p}^{e - 1}")


def z_composite(ls: LucasSpec, m: int) -> ApparitionIndex:
    """z(m) = lcm of z(p^e) over p^e || m."""
    if m < 1:
        raise DomainError("m must be >= 1")
    if gcd(m, ls.a2) != 1:
        raise DomainError(f"gcd(m, a2) = {gcd(m, ls.a2)}; z is undefined")
    z = 1
    for p, e in factorize(m).factors:
        z = math.lcm(z, z_prime_power(ls, p, e).z)
    return ApparitionIndex(m, z)


def t_lucas(ls: LucasSpec, p: int):
    """T(p) = z(p) - 1, or 0 flagged when p divides the discriminant."""
    _check_prime_coprime(ls, p)
    if ls.delta % p == 0:
        return TIndexResult(p, 0, None, False, divides_discriminant=True)
    z = z_prime(ls, p).z
    return TIndexResult(p, z - 1, (z,), False)


@dataclass(frozen=True)
class QGammaReport:
    x: float
    gamma: float
    primes: tuple[int, ...]
    # #Q * log x / x^(2 gamma)
    lemma_ratio: float


def q_gamma_set(ls: LucasSpec, x: float, gamma: float) -> QGammaReport:
    """Primes p <= x, p not dividing a2, with z(p) <= p^gamma."""
    if not 0 < gamma < 1:
        raise DomainError("gamma must lie in (0, 1)")
    out = []
    for p in primes_up_to(int(x)):
        p = int(p)
        if ls.a2 % p == 0:
            continue
        if z_prime(ls, p).z <= p**gamma:
            out.append(p)
    ratio = len(out) * math.log(x) / x ** (2 * gamma) if x > 1 else 0.0
    return QGammaReport(x, gamma, tuple(out), ratio)


def somer_check(ls: LucasSpec) -> bool:
    """True iff delta = 1, i.e. the census is {1} at every x."""
    return ls.delta == 1


__all__ = [
    "LucasSpec",
    "ApparitionIndex",
    "QGammaReport",
    "FIBONACCI",
    "PELL",
    "lucas_spec",
    "legendre",
    "z_prime",
    "z_prime_power",
    "z_composite",
    "t_lucas",
    "q_gamma_set",
    "somer_check",
    "TIndexResult",
]
