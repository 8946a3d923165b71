"""Roots of f_u modulo p, the determinant D(x_1, ..., x_k) = det(alpha_i^{x_j}),
and the quantity T(p) built from it.

For p coprime to a_k * disc(f), p divides the norm of D(0, x_2, ..., x_k)
exactly when that determinant vanishes in the splitting field of f mod p,
so T(p) is found by searching exponent tuples in F_{p^d}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from recdiv import ffield as ff
from recdiv.errors import DomainError
from recdiv.lucas import TIndexResult
from recdiv.modular import period_mod, residues_mod
from recdiv.recurrence import IntPolynomial, RecurrenceSpec, discriminant
from recdiv.smoothness import primes_up_to

__all__ = [
    "LeadingCoefficientError",
    "RepeatedRootError",
    "SplittingData",
    "TIndexResult",
    "RootCountReport",
    "SmallTReport",
    "factor_mod_p",
    "splitting_data",
    "d_determinant",
    "schur_value",
    "t_general",
    "splits_linearly",
    "root_count_congruence",
    "count_small_t",
]

MAX_ORDER = 8
# p^2 alone is too tight for small p once k >= 3 (e.g. T(2) = 6 at k = 4)
MIN_DEFAULT_CAP = 64


class LeadingCoefficientError(DomainError):
    pass


class RepeatedRootError(DomainError):
    pass


def _reduce(poly: IntPolynomial, p: int):
    F = ff.PrimeField(p)
    f = ff.ptrim(F, [c % p for c in poly.coeffs])
    if poly.lc % p == 0:
        raise LeadingCoefficientError(f"p = {p} divides the leading coefficient")
    return F, f


def factor_mod_p(poly: IntPolynomial, p: int, seed: int = 0) -> list[tuple[IntPolynomial, int]]:
    """Monic irreducible factors of f mod p with multiplicities.

    Sorted by degree, then by coefficient tuple (lowest degree first).
    """
    F, f = _reduce(poly, p)
    f = ff.pmonic(F, f)
    if ff.pdeg(f) == 0:
        return []
    factors = ff.factor_poly(F, f, ff.make_rng(seed))
    factors.sort(key=lambda item: (len(item[0]), tuple(item[0])))
    return [(IntPolynomial(g), m) for g, m in factors]


@dataclass(frozen=True)
class SplittingData:
    field: ff.FieldExtension
    roots: tuple
    source_poly: IntPolynomial

    @property
    def p(self):
        return self.field.p

    @property
    def degree(self):
        return self.field.degree


def splitting_data(poly: IntPolynomial, p: int, seed: int = 0) -> SplittingData:
    """All roots of f mod p inside F_{p^d}, d = lcm of the factor degrees.

    Each irreducible factor contributes one root found by Cantor-Zassenhaus
    over F_{p^d} and then its Frobenius orbit r, r^p, r^(p^2), ...
    """
    if poly.lc % p == 0:
        raise LeadingCoefficientError(f"p = {p} divides the leading coefficient")
    if discriminant(poly) % p == 0:
        raise RepeatedRootError(f"p = {p} divides the discriminant; roots mod p are not distinct")
    factors = factor_mod_p(poly, p, seed)
    degrees = [g.degree for g, _ in factors]
    d = ff.extension_degree(degrees)
    if d == 1:
        modulus = [0, 1]
    else:
        same = [g for g, _ in factors if g.degree == d]
        modulus = list(same[0].coeffs) if same else ff.first_irreducible(p, d)
    K = ff.FieldExtension(p, modulus)
    rng = ff.make_rng(seed)
    roots = []
    for g, _ in factors:
        gk = [K.from_int(c) for c in g.coeffs]
        if d > 1 and list(g.coeffs) == modulus:
            r = K.generator()
        else:
            r = ff.find_root(K, gk, rng)
        orbit = [r]
        for _ in range(g.degree - 1):
            orbit.append(K.pow(orbit[-1], p))
        roots.extend(orbit)
    return SplittingData(K, tuple(roots), poly)


def field_det(K, matrix):
    """Determinant over a field by Gaussian elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    det = K.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if not K.is_zero(m[r][col])), None)
        if pivot is None:
            return K.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = K.neg(det)
        piv = m[col][col]
        det = K.mul(det, piv)
        inv = K.inv(piv)
        for r in range(col + 1, n):
            if K.is_zero(m[r][col]):
                continue
            factor = K.mul(m[r][col], inv)
            for c in range(col, n):
                m[r][c] = K.sub(m[r][c], K.mul(factor, m[col][c]))
    return det


def d_determinant(sd: SplittingData, exponents) -> tuple:
    """det(alpha_i^{x_j}) in the splitting field."""
    if len(exponents) != len(sd.roots):
        raise DomainError(f"need {len(sd.roots)} exponents, got {len(exponents)}")
    if any(x < 0 for x in exponents):
        raise DomainError("exponents must be nonnegative")
    K = sd.field
    return field_det(K, [[K.pow(r, x) for x in exponents] for r in sd.roots])


def _integer_det(matrix) -> int:
    """Bareiss fraction-free determinant over Z."""
    m = [list(row) for row in matrix]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def schur_value(spec: RecurrenceSpec, exponents) -> int:
    """The integer D(x_1, ..., x_k) / Vandermonde for distinct exponents.

    Equals the Schur polynomial s_lambda at the roots, via Jacobi-Trudi with
    complete symmetric functions h_m obeying the recurrence itself.
    Zero exactly when the determinant vanishes in characteristic 0.
    """
    e = sorted(exponents)
    k = len(e)
    if len(set(e)) != k:
        return 0
    lam = [e[k - 1 - i] - (k - 1 - i) for i in range(k)]
    top = lam[0] + k
    h = [1]
    for m in range(1, top + 1):
        h.append(sum(spec.coeffs[j - 1] * h[m - j] for j in range(1, k + 1) if m - j >= 0))

    def hh(m):
        return h[m] if m >= 0 else 0

    return _integer_det([[hh(lam[i] - i + j) for j in range(k)] for i in range(k)])


def t_general(
    spec: RecurrenceSpec, p: int, cap: int | None = None, seed: int = 0
) -> TIndexResult:
    """T(p): one less than the smallest shell T' >= 1 holding a tuple
    (x_2, ..., x_k) in [1, T']^(k-1) with D(0, x_2, ..., x_k) nonzero but
    divisible by p.

    Tuples are searched by increasing maximum; only strictly increasing
    tuples are tried since permuting columns only flips the sign, and
    repeated exponents give D = 0 in characteristic 0 (norm factor 1).
    For k = 2 and p | disc the known answer T = 0 is returned flagged.
    The default cap is max(p^2, 64).
    """
    k = spec.order
    if k < 2:
        raise DomainError("T(p) needs order k >= 2")
    if k > MAX_ORDER:
        raise DomainError(f"order {k} exceeds the supported maximum {MAX_ORDER}")
    if spec.coeffs[-1] % p == 0:
        raise DomainError(f"p = {p} divides a_k = {spec.coeffs[-1]}")
    f = spec.char_poly
    if discriminant(f) % p == 0:
        if k == 2:
            return TIndexResult(p, 0, None, False, divides_discriminant=True)
        raise RepeatedRootError(f"p = {p} divides the discriminant")
    cap = max(p * p, MIN_DEFAULT_CAP) if cap is None else cap
    sd = splitting_data(f, p, seed)
    K = sd.field
    powers = [[K.one] for _ in sd.roots]
    for shell in range(1, cap + 1):
        for i, r in enumerate(sd.roots):
            powers[i].append(K.mul(powers[i][-1], r))
        for rest in combinations(range(1, shell), k - 2):
            tup = rest + (shell,)
            cols = (0,) + tup
            det = field_det(K, [[row[x] for x in cols] for row in powers])
            if K.is_zero(det) and schur_value(spec, cols) != 0:
                return TIndexResult(p, shell - 1, tup, False)
    return TIndexResult(p, cap, None, True)


def splits_linearly(poly: IntPolynomial, p: int) -> bool:
    """True iff f mod p has deg f distinct roots in F_p."""
    F, f = _reduce(poly, p)
    f = ff.pmonic(F, f)
    x = ff.x_poly(F)
    xp = ff.ppowmod(F, x, p, f)
    g = ff.pgcd(F, f, ff.psub(F, xp, x))
    return ff.pdeg(g) == ff.pdeg(f)


@dataclass(frozen=True)
class RootCountReport:
    p: int
    x: int
    count: int
    period: int
    t: int | None
    # x / T(p) + 1, None when T(p) is unavailable or zero
    lemma_value: float | None


def root_count_congruence(spec: RecurrenceSpec, p: int, x: float) -> RootCountReport:
    """#{1 <= n <= x : u_n = 0 mod p} from one pass over the period."""
    if spec.coeffs[-1] % p == 0:
        raise DomainError(f"p = {p} divides a_k = {spec.coeffs[-1]}")
    X = int(math.floor(x))
    period = period_mod(spec, p).period
    res = residues_mod(spec, p, period + 1)
    # residues are periodic from n = 0, so n and n mod period agree
    zeros = [n for n in range(1, period + 1) if res[n] == 0]
    full, rem = divmod(X, period)
    count = full * len(zeros) + sum(1 for n in zeros if n <= rem)
    t, lemma = None, None
    if spec.order >= 2 and discriminant(spec.char_poly) % p != 0 and spec.order <= MAX_ORDER:
        t = t_general(spec, p).t
        lemma = X / t + 1 if t > 0 else None
    return RootCountReport(p, X, count, period, t, lemma)


@dataclass(frozen=True)
class SmallTReport:
    bound: int
    y: int
    primes: tuple[int, ...]
    # count * log y / y^k, the fitted constant for the y^k / log y shape
    fitted_constant: float


def count_small_t(spec: RecurrenceSpec, bound: int, y: int) -> SmallTReport:
    """Primes p <= bound, coprime to a_k disc(f), with T(p) <= y."""
    disc = discriminant(spec.char_poly)
    out = []
    for p in primes_up_to(bound):
        p = int(p)
        if spec.coeffs[-1] % p == 0 or disc % p == 0:
            continue
        res = t_general(spec, p, cap=y + 1)
        if not res.capped and res.t <= y:
            out.append(p)
    k = spec.order
    fitted = len(out) * math.log(max(y, 2)) / max(y, 2) ** k
    return SmallTReport(bound, y, tuple(out), fitted)
