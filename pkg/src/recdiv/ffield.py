"""Finite fields F_p and F_{p^d}, and polynomials over them.

Polynomials are lists of field elements, lowest degree first, with no
trailing zeros ([] is the zero polynomial). The same routines serve F_p
(elements are ints) and F_{p^d} (elements are coefficient tuples).
"""

from __future__ import annotations

import random
from math import lcm

from recdiv.errors import DomainError
from recdiv.smoothness import factorize


class PrimeField:
    degree = 1

    def __init__(self, p: int):
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"GF({self.p})"

    def from_int(self, c):
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return rng.randrange(self.p)


class FieldExtension:
    """F_p[t] / (modulus), elements are length-d tuples of residues."""

    def __init__(self, p: int, modulus):
        modulus = tuple(c % p for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.char = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = p**self.degree
        self.zero = (0,) * self.degree
        self.one = (1 % p,) + (0,) * (self.degree - 1)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldExtension)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def from_int(self, c):
        return (c % self.p,) + (0,) * (self.degree - 1)

    def generator(self):
        """The class of t (a root of the modulus)."""
        if self.degree == 1:
            return (-self.modulus[0] % self.p,)
        return (0, 1) + (0,) * (self.degree - 2)

    def to_int(self, a):
        if any(a[1:]):
            raise ValueError("element is not in the prime field")
        return a[0]

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        d, p, mod = self.degree, self.p, self.modulus
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(d):
                    prod[i - d + j] -= c * mod[j]
        return tuple(v % p for v in prod[:d])

    def pow(self, a, e):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def is_zero(self, a):
        return not any(a)

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))


# ---------------------------------------------------------------------------
# Polynomial arithmetic over a field
# ---------------------------------------------------------------------------


def ptrim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def padd(F, a, b):
    n = max(len(a), len(b))
    z = F.zero
    return ptrim(F, [F.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def psub(F, a, b):
    n = max(len(a), len(b))
    z = F.zero
    return ptrim(F, [F.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(F, out)


def pscale(F, a, c):
    return ptrim(F, [F.mul(x, c) for x in a])


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lc = F.inv(b[-1])
    q = [F.zero] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = F.mul(r[i], inv_lc)
        if F.is_zero(c):
            continue
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]))
    return ptrim(F, q), ptrim(F, r[:db])


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return []
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    """Monic gcd."""
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def ppowmod(F, base, e, mod):
    result = [F.one]
    base = pmod(F, base, mod)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), mod)
        base = pmod(F, pmul(F, base, base), mod)
        e >>= 1
    return pmod(F, result, mod)


def pderiv(F, a):
    return ptrim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pdeg(a):
    return len(a) - 1


def x_poly(F):
    return [F.zero, F.one]


# ---------------------------------------------------------------------------
# Factorization (squarefree, distinct-degree, equal-degree)
# ---------------------------------------------------------------------------


def _pth_root(F, a):
    # valid over F_p, where the Frobenius fixes every coefficient
    p = F.char
    return ptrim(F, a[::p])


def squarefree_factorization(F, f):
    """[(g, multiplicity)] with f = prod g^mult, f monic over F_p."""
    out = []
    c = pgcd(F, f, pderiv(F, f))
    w = pdivmod(F, f, c)[0]
    i = 1
    while pdeg(w) > 0:
        y = pgcd(F, w, c)
        fac = pdivmod(F, w, y)[0]
        if pdeg(fac) > 0:
            out.append((fac, i))
        w = y
        c = pdivmod(F, c, y)[0]
        i += 1
    if pdeg(c) > 0:
        for g, j in squarefree_factorization(F, _pth_root(F, c)):
            out.append((g, j * F.char))
    return out


def distinct_degree_factorization(F, f):
    """[(g, d)] where g is the product of all degree-d irreducible factors."""
    out = []
    x = x_poly(F)
    h = x
    rest = f
    d = 1
    while pdeg(rest) >= 2 * d:
        h = ppowmod(F, h, F.order, rest)
        g = pgcd(F, rest, psub(F, h, x))
        if pdeg(g) > 0:
            out.append((g, d))
            rest = pdivmod(F, rest, g)[0]
            h = pmod(F, h, rest)
        d += 1
    if pdeg(rest) > 0:
        out.append((rest, pdeg(rest)))
    return out


def _splitting_map(F, h, d, mod):
    """An element that separates roots: h^((q^d-1)/2) - 1, or a trace in char 2."""
    if F.char != 2:
        t = ppowmod(F, h, (F.order**d - 1) // 2, mod)
        return psub(F, t, [F.one])
    # absolute trace from F_{q^d} down to F_2
    steps = d * F.degree
    acc = h
    term = h
    for _ in range(steps - 1):
        term = pmod(F, pmul(F, term, term), mod)
        acc = padd(F, acc, term)
    return acc


def equal_degree_factorization(F, f, d, rng):
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    n = pdeg(f)
    if n == d:
        return [f]
    factors = [f]
    while len(factors) < n // d:
        h = ptrim(F, [F.random(rng) for _ in range(n)])
        if pdeg(h) < 1:
            continue
        new = []
        for u in factors:
            if pdeg(u) == d:
                new.append(u)
                continue
            t = _splitting_map(F, pmod(F, h, u), d, u)
            g = pgcd(F, u, t)
            if 0 < pdeg(g) < pdeg(u):
                new.extend([g, pdivmod(F, u, g)[0]])
            else:
                new.append(u)
        factors = new
    return factors


def factor_poly(F, f, rng):
    """Irreducible factorization of a monic polynomial over F."""
    out = {}
    for g, mult in squarefree_factorization(F, f):
        for h, d in distinct_degree_factorization(F, g):
            for irr in equal_degree_factorization(F, h, d, rng):
                key = tuple(irr)
                out[key] = out.get(key, 0) + mult
    return [(list(k), m) for k, m in out.items()]


def is_irreducible(F, f):
    """Rabin's test over F_p."""
    n = pdeg(f)
    if n < 1:
        return False
    x = x_poly(F)
    if ppowmod(F, x, F.order**n, f) != pmod(F, x, f):
        return False
    for r, _ in factorize(n).factors:
        h = ppowmod(F, x, F.order ** (n // r), f)
        if pdeg(pgcd(F, f, psub(F, h, x))) > 0:
            return False
    return True


def find_root(F, f, rng):
    """One root in F of a polynomial that splits into distinct linear factors."""
    f = pmonic(F, f)
    while pdeg(f) > 1:
        b = F.random(rng)
        if F.is_zero(b):
            continue
        # bX + a rather than X + a: in char 2 the trace of X + a takes only two values
        t = _splitting_map(F, [F.random(rng), b], 1, f)
        g = pgcd(F, f, t)
        if 0 < pdeg(g) < pdeg(f):
            other = pdivmod(F, f, g)[0]
            f = g if pdeg(g) <= pdeg(other) else other
    return F.neg(f[0])


def first_irreducible(p: int, d: int):
    """Lexicographically first monic irreducible of degree d over F_p."""
    F = PrimeField(p)
    total = p**d
    for idx in range(total):
        coeffs = []
        v = idx
        for _ in range(d):
            coeffs.append(v % p)
            v //= p
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_irreducible(F, f):
            return f
    raise DomainError(f"no irreducible polynomial of degree {d} over F_{p}")


def extension_degree(degrees) -> int:
    d = 1
    for e in degrees:
        d = lcm(d, e)
    return d


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)
