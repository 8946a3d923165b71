"""Integer linear recurrences: specs, exact terms, characteristic polynomial.

A recurrence of order k is

    u_{n+k} = a_1 u_{n+k-1} + ... + a_k u_n,

stored as ``coeffs = (a_1, ..., a_k)`` and ``init = (u_0, ..., u_{k-1})``.
Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from recdiv.errors import DomainError

# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial over Z, coefficients lowest degree first.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def from_roots(cls, roots):
        poly = cls((1,))
        for r in roots:
            poly = poly * cls((-r, 1))
        return poly

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def reciprocal(self) -> IntPolynomial:
        """X^deg f(1/X)."""
        return IntPolynomial(reversed(self.coeffs))

    def scale_variable(self, t: int) -> IntPolynomial:
        """f(tX)."""
        return IntPolynomial(c * t**i for i, c in enumerate(self.coeffs))

    def exact_div(self, other: IntPolynomial) -> IntPolynomial:
        """Quotient when ``other`` divides ``self`` in Z[X]; raises otherwise."""
        q, r = _divmod_q(self, other)
        if not r.is_zero() or any(c.denominator != 1 for c in q):
            raise ArithmeticError("polynomial division is not exact")
        return IntPolynomial(int(c) for c in q)

    def rem_monic(self, divisor: IntPolynomial) -> IntPolynomial:
        """Remainder modulo a monic integer polynomial (stays in Z[X])."""
        if divisor.lc != 1:
            raise ValueError("divisor must be monic")
        r = list(self.coeffs)
        d = divisor.coeffs
        dn = len(d) - 1
        for i in range(len(r) - 1, dn - 1, -1):
            c = r[i]
            if c:
                for j in range(dn + 1):
                    r[i - dn + j] -= c * d[j]
        return IntPolynomial(r[:dn])

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _divmod_q(a: IntPolynomial, b: IntPolynomial):
    """Division over Q; returns (quotient as Fractions, remainder IntPolynomial-or-Q)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a.coeffs]
    db = b.degree
    q = [Fraction(0)] * max(len(r) - db, 0)
    lb = b.lc
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lb
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b.coeffs[j]
    rem = r[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    if any(c.denominator != 1 for c in rem):
        # non-integral remainder; caller only needs zero-ness
        return q, IntPolynomial((1,))
    return q, IntPolynomial(int(c) for c in rem)


def pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[X]."""
    r = list(a.coeffs)
    db = b.degree
    lb = b.lc
    e = len(r) - 1 - db + 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        r = [lb * v for v in r]
        e -= 1
        if c:
            for j in range(db + 1):
                r[i - db + j] -= c * b.coeffs[j]
        r[i] = 0
    if e > 0:
        r = [v * lb**e for v in r]
    return IntPolynomial(r[:db] if db > 0 else ())


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in Z[X] (positive leading coefficient)."""
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return a.primitive()
    ca, cb = a.content(), b.content()
    c = gcd(ca, cb)
    a, b = a.primitive(), b.primitive()
    while not b.is_zero() and b.degree > 0:
        a, b = b, pseudo_rem(a, b).primitive()
    if b.is_zero():
        g = a
    else:
        g = IntPolynomial((1,))
    return g.primitive() * c


def resultant(a: IntPolynomial, b: IntPolynomial) -> int:
    """Res(a, b) by the subresultant algorithm over Z."""
    if a.is_zero() or b.is_zero():
        return 0
    ca, cb = a.content(), b.content()
    a = IntPolynomial(c // ca for c in a.coeffs)
    b = IntPolynomial(c // cb for c in b.coeffs)
    t = ca ** b.degree * cb ** a.degree
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -s
    g = h = Fraction(1)
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = pseudo_rem(a, b)
        a = b
        denom = g * h**delta
        b = _div_exact(r, denom)
        g = Fraction(a.lc)
        h = g**delta / h ** (delta - 1) if delta else h
        if b.is_zero():
            return 0
    hh = Fraction(b.lc) ** a.degree / h ** (a.degree - 1)
    out = s * t * hh
    if out.denominator != 1:
        raise ArithmeticError("subresultant chain produced a non-integer")
    return int(out)


def _div_exact(poly: IntPolynomial, d: Fraction) -> IntPolynomial:
    out = []
    for c in poly.coeffs:
        v = Fraction(c) / d
        if v.denominator != 1:
            raise ArithmeticError("subresultant division is not exact")
        out.append(int(v))
    return IntPolynomial(out)


def discriminant(poly: IntPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f); degree-1 input gives 1."""
    n = poly.degree
    if n < 1:
        raise DomainError("discriminant needs a polynomial of degree >= 1")
    if n == 1:
        return 1
    res = resultant(poly, poly.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, poly.lc)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = IntPolynomial((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            poly = poly.exact_div(cyclotomic(d))
    return poly


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def ratio_polynomial(poly: IntPolynomial) -> IntPolynomial:
    """Res_Y(f(Y), f(XY)): its roots are all ratios alpha_i / alpha_j.

    Computed by evaluating at X = 1..k^2+1 (where f(XY) keeps degree k in Y)
    and interpolating exactly.
    """
    k = poly.degree
    xs = list(range(1, k * k + 2))
    ys = [resultant(poly, poly.scale_variable(x)) for x in xs]
    return _interpolate(xs, ys)


def _interpolate(xs, ys) -> IntPolynomial:
    # Newton divided differences over Q
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (X - xs[i]) + coef[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] += c
            nxt[d] -= c * xs[i]
        nxt[0] += coef[i]
        poly = nxt
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated ratio polynomial is not integral")
    return IntPolynomial(int(c) for c in poly)


def is_degenerate(poly: IntPolynomial) -> tuple[bool, int | None]:
    """Whether some ratio of distinct roots is a root of unity.

    Returns ``(degenerate, m)`` where ``m`` is the smallest order of a
    root-of-unity ratio, or None.  Orders m with phi(m) <= k^2 are tested,
    which covers every root of unity in a field of degree <= k^2.
    """
    if poly.degree < 1:
        raise DomainError("polynomial must be nonconstant")
    if discriminant(poly) == 0:
        raise DomainError("is_degenerate requires a squarefree polynomial")
    k = poly.degree
    if k == 1:
        return False, None
    g = ratio_polynomial(poly)
    x_minus_1 = IntPolynomial((-1, 1))
    for _ in range(k):
        g = g.exact_div(x_minus_1)
    bound = k * k
    # phi(m) >= sqrt(m/2), so m <= 2 bound^2 covers phi(m) <= bound
    for m in range(2, 2 * bound * bound + 3):
        if euler_phi(m) > bound:
            continue
        if g.rem_monic(cyclotomic(m)).is_zero():
            return True, m
    return False, None


# ---------------------------------------------------------------------------
# Recurrence specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceSpec:
    coeffs: tuple[int, ...]
    init: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "init", tuple(int(c) for c in self.init))
        if not self.coeffs:
            raise DomainError("recurrence order must be at least 1")
        if len(self.coeffs) != len(self.init):
            raise DomainError(
                f"coeffs has length {len(self.coeffs)} but init has length {len(self.init)}"
            )
        if self.coeffs[-1] == 0:
            raise DomainError("a_k must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def char_poly(self) -> IntPolynomial:
        """X^k - a_1 X^(k-1) - ... - a_k."""
        return IntPolynomial(tuple(-a for a in reversed(self.coeffs)) + (1,))

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.coeffs), "init": list(self.init)})

    @classmethod
    def from_json(cls, text: str) -> RecurrenceSpec:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"spec is not valid JSON: {exc}") from None
        if not isinstance(data, dict) or "coeffs" not in data or "init" not in data:
            raise DomainError('spec JSON must be an object with "coeffs" and "init"')
        for key in ("coeffs", "init"):
            vals = data[key]
            if not isinstance(vals, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in vals
            ):
                raise DomainError(f'"{key}" must be an array of integers')
        return cls(tuple(data["coeffs"]), tuple(data["init"]))


FIBONACCI = RecurrenceSpec((1, 1), (0, 1))


@dataclass(frozen=True)
class ValidatedRecurrence:
    spec: RecurrenceSpec
    char_poly: IntPolynomial
    discriminant: int
    simple_roots: bool
    degenerate: bool
    degeneracy_order: int | None = field(default=None)


def squarefree_part(poly: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(poly, poly.derivative())
    if g.degree <= 0:
        return poly
    return poly.exact_div(g.primitive()).primitive()


def validate_spec(spec: RecurrenceSpec) -> ValidatedRecurrence:
    """Characteristic polynomial, discriminant and the two standing predicates.

    For a multiple-root input the degeneracy test runs on the squarefree
    part of f.
    """
    if len(spec.coeffs) != len(spec.init):
        raise DomainError("coeffs and init lengths differ")
    if spec.coeffs[-1] == 0:
        raise DomainError("a_k must be nonzero")
    f = spec.char_poly
    disc = discriminant(f)
    simple = disc != 0
    degenerate, order = is_degenerate(f if simple else squarefree_part(f))
    return ValidatedRecurrence(spec, f, disc, simple, degenerate, order)


def require_standing_assumptions(spec: RecurrenceSpec) -> ValidatedRecurrence:
    """Reject multiple-root or degenerate recurrences."""
    v = validate_spec(spec)
    if not v.simple_roots:
        raise DomainError("characteristic polynomial has a multiple root (discriminant 0)")
    if v.degenerate:
        raise DomainError(
            f"recurrence is degenerate: a root ratio has order {v.degeneracy_order}"
        )
    return v


# ---------------------------------------------------------------------------
# Exact terms
# ---------------------------------------------------------------------------

ITERATION_CROSSOVER = 64


@dataclass(frozen=True)
class CompanionMatrix:
    """k x k companion matrix of the recurrence, optionally reduced mod m.

    Acting on column states (u_n, ..., u_{n+k-1}); last row is
    [a_k, ..., a_1] and the superdiagonal is the identity.
    """

    rows: tuple[tuple[int, ...], ...]
    modulus: int | None = None

    @classmethod
    def of(cls, spec: RecurrenceSpec, modulus: int | None = None) -> CompanionMatrix:
        k = spec.order
        rows = []
        for i in range(k - 1):
            rows.append(tuple(1 if j == i + 1 else 0 for j in range(k)))
        rows.append(tuple(reversed(spec.coeffs)))
        mat = cls(tuple(rows), None)
        return mat._reduced(modulus) if modulus else mat

    @property
    def size(self) -> int:
        return len(self.rows)

    def _reduced(self, m):
        return CompanionMatrix(tuple(tuple(v % m for v in row) for row in self.rows), m)

    def __matmul__(self, other: CompanionMatrix) -> CompanionMatrix:
        k, m = self.size, self.modulus
        cols = list(zip(*other.rows))
        rows = []
        for row in self.rows:
            new = tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            rows.append(tuple(v % m for v in new) if m else new)
        return CompanionMatrix(tuple(rows), m)

    def identity(self) -> CompanionMatrix:
        k = self.size
        one = 1 % self.modulus if self.modulus else 1
        return CompanionMatrix(
            tuple(tuple(one if i == j else 0 for j in range(k)) for i in range(k)), self.modulus
        )

    def __pow__(self, n: int) -> CompanionMatrix:
        result, base = self.identity(), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply(self, vec) -> tuple[int, ...]:
        out = tuple(sum(a * b for a, b in zip(row, vec)) for row in self.rows)
        return tuple(v % self.modulus for v in out) if self.modulus else out


def iterate_terms(spec: RecurrenceSpec, count: int, modulus: int | None = None):
    """Yield u_0, ..., u_{count-1} (reduced mod ``modulus`` if given)."""
    k = spec.order
    a = spec.coeffs
    state = [v % modulus for v in spec.init] if modulus else list(spec.init)
    for n in range(count):
        if n < k:
            yield state[n]
            continue
        nxt = sum(a[j] * state[-1 - j] for j in range(k))
        if modulus:
            nxt %= modulus
        state.append(nxt)
        del state[0]
        yield nxt


def exact_term(spec: RecurrenceSpec, n: int) -> int:
    """Exact u_n: iteration for small n, companion-matrix power otherwise."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n < spec.order:
        return spec.init[n]
    if n <= ITERATION_CROSSOVER * spec.order:
        return _term_by_iteration(spec, n)
    return _term_by_matrix(spec, n)


def _term_by_iteration(spec, n):
    last = None
    for last in iterate_terms(spec, n + 1):
        pass
    return last


def _term_by_matrix(spec, n):
    return (CompanionMatrix.of(spec) ** n).apply(spec.init)[0]


# two Mersenne-size primes; a zero candidate must vanish mod both before the
# exact check
_ZERO_SCREEN_PRIMES = (2305843009213693951, 4611686018427387847)


def zero_terms(spec: RecurrenceSpec, bound: int = 10**4) -> list[int]:
    """All n <= bound with u_n = 0.

    Residues mod two large primes screen the range in word arithmetic;
    every surviving index is confirmed by ``exact_term``.
    """
    if bound < 1:
        raise DomainError("bound must be >= 1")
    p1, p2 = _ZERO_SCREEN_PRIMES
    first = iterate_terms(spec, bound + 1, p1)
    second = iterate_terms(spec, bound + 1, p2)
    out = []
    for n, (r1, r2) in enumerate(zip(first, second)):
        if r1 == 0 and r2 == 0 and exact_term(spec, n) == 0:
            out.append(n)
    return out
