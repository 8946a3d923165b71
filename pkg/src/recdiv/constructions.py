"""Explicit families of members n | u_n, each emitted with a certificate.

Three constructions:

* Lucas-special numbers n = 2 s M_y (Lucas sequences with a2 = +-1),
* discriminant powers r^e times primitive prime factors of u_{r^e},
* zero-term multiples p * n0 where u_{n0} = 0.

A certificate is only marked verified after n | u_n has been recomputed.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from recdiv.errors import DomainError
from recdiv.lucas import LucasSpec, z_prime
from recdiv.modular import divides_term, period_mod, term_mod
from recdiv.recurrence import (
    IntPolynomial,
    RecurrenceSpec,
    discriminant,
    exact_term,
)
from recdiv.smoothness import factorize, primes_up_to, shared_sieve
from recdiv.splitting import splits_linearly

LUCAS_SPECIAL = "lucas-special"
DISCRIMINANT_POWER = "discriminant-power"
ZERO_TERM = "zero-term"
KINDS = (LUCAS_SPECIAL, DISCRIMINANT_POWER, ZERO_TERM)

DEFAULT_V = 4 / 3
# u_n grows exponentially, so primitive factors get a larger rho budget
PRIMITIVE_RHO_ITERATIONS = 20_000_000


@dataclass(frozen=True)
class ConstructionCertificate:
    n: int
    kind: str
    witness: dict = field(compare=False)
    verified: bool = False

    def to_dict(self) -> dict:
        return {"n": self.n, "kind": self.kind, "witness": self.witness, "verified": self.verified}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _as_recurrence(spec) -> RecurrenceSpec:
    return spec.recurrence if isinstance(spec, LucasSpec) else spec


def _check_kind_hypothesis(spec: RecurrenceSpec, kind: str):
    if kind == LUCAS_SPECIAL:
        if spec.order != 2 or spec.init != (0, 1) or spec.coeffs[1] not in (1, -1):
            raise DomainError("lucas-special membership needs a Lucas sequence with a2 = +-1")


def verify_membership(spec, certs, workers: int | None = None) -> list[ConstructionCertificate]:
    """Recompute n | u_n for every certificate; results sorted by n."""
    seq = _as_recurrence(spec)
    certs = list(certs)
    for kind in sorted({c.kind for c in certs}):
        _check_kind_hypothesis(seq, kind)
    with ThreadPoolExecutor(max_workers=workers or 1) as pool:
        flags = list(pool.map(lambda c: divides_term(seq, c.n), certs))
    out = [replace(c, verified=ok) for c, ok in zip(certs, flags)]
    return sorted(out, key=lambda c: c.n)


# ---------------------------------------------------------------------------
# Lucas-special numbers
# ---------------------------------------------------------------------------


def m_y(y: float) -> int:
    """lcm(1, 2, ..., floor(y))."""
    if y < 1:
        raise DomainError("y must be >= 1")
    return math.lcm(*range(1, int(math.floor(y)) + 1))


@dataclass(frozen=True)
class SpecialPrimeSet:
    y: int
    z: int
    primes: tuple[int, ...]


def _shifted_square_ok(p, y, sieve) -> bool:
    # prime powers exactly dividing (p - 1)(p + 1); the two share only the prime 2
    exps: dict[int, int] = {}
    for q in (p - 1, p + 1):
        for ell, e in sieve.factor_pairs(q):
            exps[ell] = exps.get(ell, 0) + e
    for ell, e in exps.items():
        if ell > y:
            return False
        if e >= 2 and ell**e > y:
            return False
    return True


def special_primes(y: int, z: int) -> SpecialPrimeSet:
    """Primes p in [y+1, z] with p^2 - 1 y-smooth and free of proper prime powers above y."""
    y, z = int(y), int(z)
    if y < 3 or z <= y:
        raise DomainError("special primes need 3 <= y < z")
    sieve = shared_sieve(max(z + 1, 16))
    out = [int(p) for p in primes_up_to(z) if p > y and _shifted_square_ok(int(p), y, sieve)]
    return SpecialPrimeSet(y, z, tuple(out))


def _squarefree_products(primes, bound):
    """(product, factors) over subsets of primes with product <= bound."""
    out = []

    def walk(start, prod, chosen):
        out.append((prod, tuple(chosen)))
        for i in range(start, len(primes)):
            q = prod * primes[i]
            if q > bound:
                break
            chosen.append(primes[i])
            walk(i + 1, q, chosen)
            chosen.pop()

    walk(0, 1, [])
    return out


def lucas_special_r(x: float, y: float, z: float) -> int:
    """floor((log x - 2y) / log z), the subset size used in the counting argument."""
    return math.floor((math.log(x) - 2 * y) / math.log(z))


def lucas_special_members(
    x: int, y: int, r_mode: str = "all", v: float = DEFAULT_V
) -> list[ConstructionCertificate]:
    """Unverified certificates for n = 2 s M_y <= x.

    s runs over squarefree products of special primes in (y, y^v]; with
    ``r_mode="exact-r"`` only products of exactly r primes are kept. s = 1 is
    always included.
    """
    if y < 3:
        raise DomainError("y must be >= 3")
    M = m_y(y)
    if x < 2 * M:
        raise DomainError(f"x = {x} is below 2 M_y = {2 * M}")
    if r_mode not in ("all", "exact-r"):
        raise DomainError(f"unknown r mode {r_mode!r}")
    z = int(math.floor(y**v))
    primes = list(special_primes(y, z).primes) if z > y else []
    subsets = _squarefree_products(sorted(primes), x // (2 * M))
    if r_mode == "exact-r":
        r = lucas_special_r(x, y, max(z, 2))
        subsets = [(s, fs) for s, fs in subsets if s == 1 or len(fs) == r]
    certs = [
        ConstructionCertificate(2 * s * M, LUCAS_SPECIAL, {"y": y, "M_y": M, "s": list(fs)})
        for s, fs in subsets
    ]
    return sorted(certs, key=lambda c: c.n)


def lucas_special_union(x: int, ys, r_mode: str = "all", v: float = DEFAULT_V):
    """Members over several y, deduplicated by n (first y wins)."""
    seen: dict[int, ConstructionCertificate] = {}
    for y in ys:
        for cert in lucas_special_members(x, y, r_mode, v):
            seen.setdefault(cert.n, cert)
    return [seen[n] for n in sorted(seen)]


# ---------------------------------------------------------------------------
# Discriminant powers and primitive prime factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimitiveFactors:
    n: int
    primes: tuple[int, ...]
    complete: bool
    # primitive primes failing p = +-1 (mod n); should stay empty
    congruence_violations: tuple[int, ...] = ()


def primitive_prime_factors(
    ls: LucasSpec, n: int, seed: int = 0, rho_iterations: int = PRIMITIVE_RHO_ITERATIONS
) -> PrimitiveFactors:
    """Primes dividing u_n but not delta * u_m for any 1 <= m < n.

    ``complete`` is False when part of u_n resisted the factorization
    budget; the primes listed are then only those that were found.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    u = abs(exact_term(ls.recurrence, n))
    if u == 0:
        raise DomainError(f"u_{n} = 0 has no prime factorization")
    fl = factorize(u, seed=seed, rho_iterations=rho_iterations)
    out, bad = [], []
    for p in fl.primes:
        if ls.delta % p == 0 or ls.a2 % p == 0:
            continue
        if z_prime(ls, p).z < n:
            continue
        out.append(p)
        if p % n not in (1, n - 1) and n > 2:
            bad.append(p)
    return PrimitiveFactors(n, tuple(out), fl.complete, tuple(bad))


def least_prime_factor(n: int) -> int:
    return factorize(abs(n)).primes[0]


def discriminant_power_members(
    ls: LucasSpec, x: int, e: int = 2, seed: int = 0, workers: int | None = None
) -> list[ConstructionCertificate]:
    """r^j <= x and r^e * prod p_i^b_i <= x, with r the least prime of |delta|.

    The p_i are the prime factors of u_{r^e} other than r; each has z(p_i)
    dividing r^e. Exponents are capped at floor(log(x / r^e) / (m log p_i))
    for m primes, which keeps every product below x. The r^e products are
    skipped when r^e > x.
    """
    if ls.delta == 1:
        raise DomainError("discriminant-power members need delta != 1")
    if e < 1:
        raise DomainError("e must be >= 1")
    r = least_prime_factor(ls.delta)
    certs = []
    j, q = 1, r
    while q <= x:
        certs.append(ConstructionCertificate(q, DISCRIMINANT_POWER, {"r": r, "e": j, "primes": [], "betas": []}))
        j += 1
        q *= r
    base = r**e
    if base <= x:
        primes, complete = [], True
        for j in range(1, e + 1):
            pf = primitive_prime_factors(ls, r**j, seed)
            primes.extend(pf.primes)
            complete = complete and pf.complete
        primes.sort()
        m = len(primes)
        caps = [int(math.floor(math.log(x / base) / (m * math.log(p)))) for p in primes]
        for betas in _exponent_tuples(caps):
            if not any(betas):
                continue
            n = base
            for p, b in zip(primes, betas):
                n *= p**b
            if n <= x:
                witness = {"r": r, "e": e, "primes": primes, "betas": list(betas)}
                if not complete:
                    witness["incomplete"] = True
                certs.append(ConstructionCertificate(n, DISCRIMINANT_POWER, witness))
    return verify_membership(ls, certs, workers)


def _exponent_tuples(caps):
    tuples = [()]
    for c in caps:
        tuples = [t + (b,) for t in tuples for b in range(c + 1)]
    return tuples


# ---------------------------------------------------------------------------
# Zero-term members p * n0
# ---------------------------------------------------------------------------


def remark_sequence() -> RecurrenceSpec:
    """u_n = 10^n - 7^n - 2 * 5^n - 1, coefficients from the expanded product."""
    f = IntPolynomial.from_roots([10, 7, 5, 1])
    coeffs = tuple(-c for c in reversed(f.coeffs[:-1]))
    init = tuple(10**n - 7**n - 2 * 5**n - 1 for n in range(4))
    return RecurrenceSpec(coeffs, init)


# the named exception to gcd(n0, a_k) = 1, with its own lower bound on p
REMARK_EXCEPTION = (remark_sequence(), 2, 11)


def zero_term_members(
    spec: RecurrenceSpec, n0: int, x: int, workers: int | None = None
) -> list[ConstructionCertificate]:
    """Certificates for p * n0 <= x with p = 1 (mod t), f_u split mod p, p > n0 |delta|.

    t is the period of u mod n0. For the remark sequence with n0 = 2 the
    coprimality requirement is waived and the bound on p is p >= 11.
    """
    if n0 < 1:
        raise DomainError("n0 must be >= 1")
    if exact_term(spec, n0) != 0:
        raise DomainError(f"u_{n0} != 0")
    exception = (spec, n0) == REMARK_EXCEPTION[:2]
    ak = spec.coeffs[-1]
    if math.gcd(n0, ak) != 1 and not exception:
        raise DomainError(
            f"gcd(n0, a_k) = {math.gcd(n0, ak)}; coprimality is required here "
            "(it is not always necessary, but only the documented exception is accepted)"
        )
    t = period_mod(spec, n0).period
    f = spec.char_poly
    delta = discriminant(f)
    lower = REMARK_EXCEPTION[2] - 1 if exception else n0 * abs(delta)
    certs = []
    for p in primes_up_to(x // n0):
        p = int(p)
        if p <= lower or (p - 1) % t:
            continue
        if f.lc % p == 0 or not splits_linearly(f, p):
            continue
        certs.append(ConstructionCertificate(p * n0, ZERO_TERM, {"p": p, "n0": n0, "t_n0": t}))
    return verify_membership(spec, certs, workers)


def zero_term_congruences(spec: RecurrenceSpec, cert: ConstructionCertificate) -> tuple[bool, bool]:
    """(u_n = 0 mod n0, u_n = 0 mod p) checked separately."""
    w = cert.witness
    return term_mod(spec, cert.n, w["n0"]) == 0, term_mod(spec, cert.n, w["p"]) == 0


@dataclass(frozen=True)
class RemarkReport:
    x: int
    checked: tuple[int, ...]
    failures: tuple[int, ...]
    # primes below 11, outside the claimed range: p -> whether 2p | u_{2p}
    below_range: dict = field(compare=False)

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "checked": len(self.checked),
            "failures": list(self.failures),
            "below_range": {str(p): ok for p, ok in sorted(self.below_range.items())},
            "all_pass": self.all_pass,
        }


def verify_remark_sequence(x: int) -> RemarkReport:
    """Check 2p | u_{2p} for primes 11 <= p <= x."""
    spec = remark_sequence()
    checked, failures, below = [], [], {}
    for p in primes_up_to(int(x)):
        p = int(p)
        ok = divides_term(spec, 2 * p)
        if p < 11:
            below[p] = ok
            continue
        checked.append(p)
        if not ok:
            failures.append(p)
    return RemarkReport(int(x), tuple(checked), tuple(failures), below)


__all__ = [
    "ConstructionCertificate",
    "KINDS",
    "PrimitiveFactors",
    "RemarkReport",
    "SpecialPrimeSet",
    "discriminant_power_members",
    "lucas_special_members",
    "lucas_special_r",
    "lucas_special_union",
    "m_y",
    "primitive_prime_factors",
    "remark_sequence",
    "special_primes",
    "verify_membership",
    "verify_remark_sequence",
    "zero_term_congruences",
    "zero_term_members",
]
