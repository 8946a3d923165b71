import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import primes, rank_scan, terms
from recdiv.errors import DomainError
from recdiv.lucas import (
    FIBONACCI,
    PELL,
    legendre,
    lucas_spec,
    q_gamma_set,
    somer_check,
    t_lucas,
    z_composite,
    z_prime,
    z_prime_power,
)

# (a1, a2) pairs: Fibonacci, Pell, (3, -1), (1, -3), (5, 3)
PAIRS = [(1, 1), (2, 1), (3, -1), (1, -3), (5, 3)]


class TestSpec:
    def test_examples(self):
        assert lucas_spec(1, 1).delta == 5
        assert lucas_spec(2, 1).delta == 8

    @pytest.mark.parametrize("a1, a2", [(2, 2), (0, 0), (2, -1), (1, -1), (0, 1)])
    def test_rejected(self, a1, a2):
        # gcd, a2 = 0, delta = 0, and two degenerate pairs (ratio order 6 / 2)
        with pytest.raises(DomainError):
            lucas_spec(a1, a2)

    def test_recurrence(self):
        assert FIBONACCI.recurrence.init == (0, 1)


class TestRank:
    @pytest.mark.parametrize("p, z", [(2, 3), (3, 4), (5, 5), (7, 8), (11, 10), (13, 7)])
    def test_fibonacci_primes(self, p, z):
        assert z_prime(FIBONACCI, p).z == z

    @pytest.mark.parametrize("a1, a2", PAIRS)
    def test_against_scan(self, a1, a2):
        ls = lucas_spec(a1, a2)
        for p in primes(400):
            if a2 % p == 0:
                continue
            assert z_prime(ls, p).z == rank_scan((a1, a2), p)

    def test_prime_powers(self):
        assert z_prime_power(FIBONACCI, 2, 3).z == 6
        assert z_prime_power(FIBONACCI, 2, 1).z == 3
        assert z_prime_power(FIBONACCI, 5, 2).z == 25

    @pytest.mark.parametrize("a1, a2", PAIRS)
    def test_prime_power_scan(self, a1, a2):
        ls = lucas_spec(a1, a2)
        for p in primes(30):
            if a2 % p == 0:
                continue
            for e in (1, 2, 3):
                z = z_prime_power(ls, p, e).z
                assert z == rank_scan((a1, a2), p**e)
                assert (z_prime(ls, p).z * p ** (e - 1)) % z == 0

    def test_composites(self):
        assert z_composite(FIBONACCI, 10).z == 15
        assert z_composite(FIBONACCI, 1).z == 1
        assert z_composite(FIBONACCI, 25).z == 25

    @given(st.sampled_from(PAIRS), st.integers(1, 3000))
    @settings(max_examples=200, deadline=None)
    def test_composite_scan(self, pair, m):
        if math.gcd(m, pair[1]) != 1:
            return
        assert z_composite(lucas_spec(*pair), m).z == rank_scan(pair, m)

    def test_errors(self):
        ls = lucas_spec(1, -3)
        with pytest.raises(DomainError):
            z_prime(ls, 3)
        with pytest.raises(DomainError):
            z_composite(ls, 6)
        with pytest.raises(DomainError):
            z_prime_power(FIBONACCI, 2, 0)

    @pytest.mark.parametrize("a1, a2", PAIRS)
    def test_divides_legendre_bound(self, a1, a2):
        ls = lucas_spec(a1, a2)
        for p in primes(500):
            if (a2 * ls.delta) % p == 0:
                continue
            assert (p - legendre(ls.delta, p)) % z_prime(ls, p).z == 0

    def test_legendre(self):
        assert legendre(5, 11) == 1
        assert legendre(5, 13) == -1
        assert legendre(10, 5) == 0
        assert [legendre(a, 2) for a in (1, 3, 5, 7, 8)] == [1, -1, -1, 1, 0]


class TestLaw:
    @pytest.mark.parametrize("ls", [FIBONACCI, PELL], ids=["fib", "pell"])
    def test_divisibility_law_sampled(self, ls):
        u = terms((ls.a1, ls.a2), (0, 1), 601)
        for m in range(1, 151):
            z = z_composite(ls, m).z
            for n in range(1, 601):
                assert (u[n] % m == 0) == (n % z == 0)


class TestT:
    def test_examples(self):
        assert t_lucas(FIBONACCI, 11).t == 9
        assert t_lucas(FIBONACCI, 2).t == 2
        five = t_lucas(FIBONACCI, 5)
        assert five.t == 0 and five.divides_discriminant

    def test_q_gamma(self):
        assert q_gamma_set(FIBONACCI, 100, 0.5).primes == ()
        high = q_gamma_set(FIBONACCI, 100, 0.99).primes
        assert 11 in high and 5 not in high
        assert q_gamma_set(FIBONACCI, 1.5, 0.5).primes == ()
        with pytest.raises(DomainError):
            q_gamma_set(FIBONACCI, 100, 1.0)

    def test_q_gamma_oracle(self):
        got = q_gamma_set(PELL, 2000, 0.7).primes
        want = tuple(p for p in primes(2000) if rank_scan((2, 1), p) <= p**0.7)
        assert got == want

    def test_somer(self):
        assert somer_check(lucas_spec(3, -2))
        assert not somer_check(FIBONACCI)
        assert not somer_check(PELL)
