"""Residues u_n mod m, the membership predicate n | u_n, periods mod m."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from recdiv import _backend
from recdiv.errors import DomainError
from recdiv.recurrence import CompanionMatrix, RecurrenceSpec, iterate_terms

__all__ = [
    "CompanionMatrix",
    "PeriodRecord",
    "PeriodCapExceeded",
    "term_mod",
    "divides_term",
    "period_mod",
    "residues_mod",
]

DEFAULT_STATE_CAP = 10**8


class PeriodCapExceeded(DomainError):
    pass


@dataclass(frozen=True)
class PeriodRecord:
    modulus: int
    period: int
    preperiod: int


def term_mod(spec: RecurrenceSpec, n: int, m: int) -> int:
    """u_n mod m in [0, m).

    Word-sized moduli go to the compiled kernel when it is available;
    anything larger runs the same algorithm on Python integers.
    """
    if m < 1:
        raise DomainError("modulus must be >= 1")
    if n < 0:
        raise DomainError("n must be nonnegative")
    if m == 1:
        return 0
    a = [c % m for c in spec.coeffs]
    u = [v % m for v in spec.init]
    if _backend.fits_compiled(spec.order, n, m):
        return _backend.compiled_kernels.term_mod(a, u, n, m)
    return _backend.python_kernels.term_mod(a, u, n, m)


def divides_term(spec: RecurrenceSpec, n: int) -> bool:
    """n | u_n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return term_mod(spec, n, n) == 0


def residues_mod(spec: RecurrenceSpec, m: int, count: int) -> list[int]:
    """u_0, ..., u_{count-1} mod m."""
    return list(iterate_terms(spec, count, m))


def _step(a, m):
    k = len(a)

    def step(state):
        return state[1:] + (sum(a[j] * state[k - 1 - j] for j in range(k)) % m,)

    return step


def period_mod(spec: RecurrenceSpec, m: int, cap: int = DEFAULT_STATE_CAP) -> PeriodRecord:
    """Period and preperiod of the state vector (u_n, ..., u_{n+k-1}) mod m.

    With gcd(a_k, m) = 1 the companion matrix is invertible, so the orbit is
    purely periodic and the walk stops on returning to the start. Otherwise
    Brent's cycle finder locates period and preperiod in constant memory.
    Raises PeriodCapExceeded after ``cap`` steps.
    """
    if m < 1:
        raise DomainError("modulus must be >= 1")
    if m == 1:
        return PeriodRecord(1, 1, 0)
    a = spec.coeffs
    step = _step(a, m)
    start = tuple(v % m for v in spec.init)

    def over(steps):
        if steps > cap:
            raise PeriodCapExceeded(f"period search mod {m} exceeded {cap} steps")

    if gcd(a[-1], m) == 1:
        state, idx = step(start), 1
        while state != start:
            state = step(state)
            idx += 1
            over(idx)
        return PeriodRecord(m, idx, 0)

    # Brent: find the period lam, then walk two pointers lam apart for mu
    power = lam = 1
    tortoise, hare = start, step(start)
    steps = 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
        steps += 1
        over(steps)
    tortoise = hare = start
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(hare)
        mu += 1
        over(steps + mu)
    return PeriodRecord(m, lam, mu)
