import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_smooth, primes
from recdiv.smoothness import (
    SmoothSieve,
    big_l,
    divisors,
    factorize,
    has_large_proper_prime_power,
    is_prime,
    largest_prime_factor,
    largest_prime_factors,
    log_iter,
    pi_smooth,
    pi_smooth_table,
    pollard_rho,
    primes_up_to,
    psi,
    smooth_shifted_primes,
)


class TestPrimes:
    def test_sieve(self):
        assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert len(primes_up_to(10**5)) == 9592
        assert len(primes_up_to(1)) == 0

    @given(st.integers(0, 10**30))
    @settings(max_examples=300)
    def test_is_prime(self, n):
        assert is_prime(n) == sympy.isprime(n)

    @pytest.mark.parametrize("n", [561, 3215031751, 3825123056546413051, 318665857834031151167461])
    def test_strong_pseudoprimes(self, n):
        assert not is_prime(n)

    def test_large_primes(self):
        assert is_prime(2**89 - 1)
        assert is_prime(2**127 - 1)
        assert not is_prime((2**61 - 1) * (2**31 - 1))


class TestFactorize:
    def test_examples(self):
        assert factorize(75025).factors == ((5, 2), (3001, 1))
        one = factorize(1)
        assert one.factors == () and one.largest == 1
        fl = factorize(120)
        assert fl.factors == ((2, 3), (3, 1), (5, 1))
        assert (fl.omega, fl.tau, fl.largest) == (3, 16, 5)

    @given(st.integers(1, 10**12))
    @settings(max_examples=2000, deadline=None)
    def test_round_trip(self, n):
        fl = factorize(n)
        assert fl.complete and fl.product() == n
        assert all(is_prime(p) for p in fl.primes)
        assert fl.primes == sorted(set(fl.primes))

    @given(st.integers(2, 10**24))
    @settings(max_examples=100, deadline=None)
    def test_matches_sympy(self, n):
        assert dict(factorize(n).factors) == sympy.factorint(n)

    def test_rho_semiprime(self):
        p, q = 1000003, 1000033
        assert factorize(p * q, trial_limit=100).factors == ((p, 1), (q, 1))
        d = pollard_rho(p * q, random.Random(1))
        assert d in (p, q)

    def test_perfect_power(self):
        assert factorize(1000003**3, trial_limit=10).factors == ((1000003, 3),)

    def test_budget_exhaustion(self):
        n = (2**61 - 1) * (2**89 - 1)
        fl = factorize(n, trial_limit=10, rho_iterations=10)
        assert not fl.complete and fl.product() == n

    def test_seed_determinism(self):
        n = 1000003 * 1000033 * 998244353
        assert factorize(n, seed=3, trial_limit=10) == factorize(n, seed=3, trial_limit=10)

    def test_sieve_lookup(self):
        sieve = SmoothSieve(10**4)
        for n in range(1, 10**4 + 1, 37):
            assert factorize(n, sieve=sieve) == factorize(n)
        assert sieve.spf[91] == 7

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]


class TestLargestPrime:
    def test_segment(self):
        got = largest_prime_factors(1, 2001)
        want = [1] + [max(sympy.factorint(n)) for n in range(2, 2001)]
        assert got.tolist() == want

    def test_offset_segment(self):
        lo = 10**9
        got = largest_prime_factors(lo, lo + 500)
        assert got.tolist() == [largest_prime_factor(n) for n in range(lo, lo + 500)]

    @given(st.integers(1, 10**4), st.integers(1, 10**4))
    def test_multiplicative_max(self, m, n):
        if math.gcd(m, n) != 1:
            return
        assert largest_prime_factor(m * n) == max(largest_prime_factor(m), largest_prime_factor(n))


class TestPsi:
    def test_examples(self):
        assert psi(100, 5).count == 34
        assert psi(10, 10).count == 10
        assert psi(100, 1).count == 1

    def test_reference_columns(self):
        r = psi(10**4, 10)
        assert r.v == pytest.approx(4.0)
        assert r.reference == pytest.approx(10**4 * math.exp(-4 * math.log(4)))

    @pytest.mark.parametrize("x", [1, 7, 100, 1234.5])
    def test_diagonal(self, x):
        assert psi(x, x).count == math.floor(x)

    @given(st.integers(1, 3000), st.integers(1, 60))
    @settings(max_examples=80, deadline=None)
    def test_brute_force(self, x, y):
        want = sum(1 for n in range(1, x + 1) if is_smooth(n, y))
        assert psi(x, y).count == want

    @given(st.integers(1, 2000), st.integers(1, 50))
    @settings(max_examples=50, deadline=None)
    def test_monotone(self, x, y):
        c = psi(x, y).count
        assert psi(x + 17, y).count >= c
        assert psi(x, y + 3).count >= c

    def test_multi_segment(self, monkeypatch):
        from recdiv import smoothness

        monkeypatch.setattr(smoothness, "SEGMENT", 997)
        want = psi(10**4, 30).count
        monkeypatch.setattr(smoothness, "SEGMENT", 1 << 20)
        assert want == psi(10**4, 30).count

    def test_domain(self):
        with pytest.raises(ValueError):
            psi(0, 5)


class TestPiSmooth:
    def test_examples(self):
        assert smooth_shifted_primes(50, 5) == [2, 3, 5, 7, 11, 17, 19, 31]
        assert pi_smooth(50, 5) == 8
        assert pi_smooth(2, 2) == 0

    def test_large_y(self):
        assert pi_smooth(100, 100**2) == 25

    @pytest.mark.parametrize("y", [10, 100])
    def test_oracle(self, y):
        want = [p for p in primes(10**4) if is_smooth(p * p - 1, y)]
        assert smooth_shifted_primes(10**4, y) == want

    def test_table(self):
        rows = pi_smooth_table([10, 100])
        assert [(r.x, r.count) for r in rows] == [(12, 5), (21, 8), (158, 37), (464, 80)]
        assert rows[1].ratio == pytest.approx(8 / 10 ** (4 / 3))


class TestPrimePowers:
    def test_examples(self):
        assert has_large_proper_prime_power(120, 7)
        assert not has_large_proper_prime_power(120, 8)
        assert not has_large_proper_prime_power(30, 2)


class TestL:
    def test_examples(self):
        assert big_l(2) == pytest.approx(math.e)
        assert big_l(math.e**math.e) == pytest.approx(math.exp(math.sqrt(math.e)))
        assert big_l(10**6) < big_l(10**9)

    def test_clamping(self):
        assert log_iter(0.5) == 1.0
        assert log_iter(10**6, 2) == pytest.approx(math.log(math.log(10**6)))
        assert log_iter(3, 2) == 1.0

    def test_monotone(self):
        xs = np.geomspace(3, 1e12, 200)
        vals = [big_l(x) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
