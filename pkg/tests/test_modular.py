import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIB, PELL, TRIB, TWO_POW, backends
from oracles import naive_census, terms
from recdiv.errors import DomainError
from recdiv.modular import PeriodCapExceeded, divides_term, period_mod, residues_mod, term_mod
from recdiv.recurrence import RecurrenceSpec, discriminant, exact_term

specs = st.integers(1, 5).flatmap(
    lambda k: st.tuples(
        st.lists(st.integers(-20, 20), min_size=k, max_size=k).filter(lambda c: c[-1] != 0),
        st.lists(st.integers(-50, 50), min_size=k, max_size=k),
    )
).map(lambda ci: RecurrenceSpec(tuple(ci[0]), tuple(ci[1])))

# periods mod m can reach m^k, so period tests stay at small k
small_specs = st.integers(1, 3).flatmap(
    lambda k: st.tuples(
        st.lists(st.integers(-20, 20), min_size=k, max_size=k).filter(lambda c: c[-1] != 0),
        st.lists(st.integers(-50, 50), min_size=k, max_size=k),
    )
).map(lambda ci: RecurrenceSpec(tuple(ci[0]), tuple(ci[1])))


class TestTermMod:
    def test_examples(self):
        assert term_mod(FIB, 10, 7) == 6
        assert term_mod(TRIB, 0, 5) == 0
        assert term_mod(FIB, 2**40, 10) == 7
        assert term_mod(FIB, 5, 1) == 0

    def test_big_index_via_period(self):
        # Pisano period mod 10 is 60
        assert term_mod(FIB, 2**40, 10) == exact_term(FIB, 2**40 % 60) % 10

    @given(specs, st.integers(0, 2000), st.integers(1, 10**6))
    @settings(max_examples=200, deadline=None)
    def test_matches_exact(self, spec, n, m):
        assert term_mod(spec, n, m) == exact_term(spec, n) % m

    @given(specs, st.integers(0, 400), st.integers(2**62, 2**70))
    @settings(max_examples=60, deadline=None)
    def test_large_moduli(self, spec, n, m):
        assert term_mod(spec, n, m) == exact_term(spec, n) % m

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            term_mod(FIB, 3, 0)
        with pytest.raises(DomainError):
            term_mod(FIB, -1, 5)


@pytest.mark.parametrize("kernels", backends)
class TestKernels:
    @given(specs, st.integers(0, 10**5), st.integers(2, 2**63 - 1))
    @settings(max_examples=200, deadline=None)
    def test_backends_agree(self, kernels, spec, n, m):
        from recdiv import _backend

        a = [c % m for c in spec.coeffs]
        u = [v % m for v in spec.init]
        assert kernels.term_mod(a, u, n, m) == _backend.python_kernels.term_mod(a, u, n, m)

    def test_near_word_limit(self, kernels):
        m = 2**63 - 25  # prime
        a, u = [1, 1], [0, 1]
        expected = exact_term(FIB, 5000) % m
        assert kernels.term_mod(a, u, 5000, m) == expected

    @pytest.mark.parametrize("spec", [FIB, PELL, TWO_POW, TRIB])
    def test_census_block(self, kernels, spec):
        flags = np.asarray(kernels.census_block(spec.coeffs, spec.init, 1, 501))
        got = set((np.flatnonzero(flags) + 1).tolist())
        assert got == naive_census(spec.coeffs, spec.init, 500)

    def test_census_block_offset(self, kernels):
        flags = np.asarray(kernels.census_block(FIB.coeffs, FIB.init, 100, 200))
        assert (np.flatnonzero(flags) + 100).tolist() == [108, 120, 125, 144, 168, 180, 192]


class TestDivides:
    def test_examples(self):
        assert divides_term(FIB, 12)
        assert not divides_term(FIB, 13)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 97, 101, 7919, 10**9 + 7])
    def test_fermat(self, p):
        assert divides_term(TWO_POW, p)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            divides_term(FIB, 0)


class TestPeriod:
    def test_examples(self):
        assert period_mod(FIB, 2) == period_mod(FIB, 2).__class__(2, 3, 0)
        rec = period_mod(FIB, 10)
        assert (rec.period, rec.preperiod) == (60, 0)
        assert (period_mod(TRIB, 1).period, period_mod(TRIB, 1).preperiod) == (1, 0)

    def test_preperiod(self):
        # 2^n - 2 mod 4: -1, 0, 2, 2, 2, ...
        rec = period_mod(TWO_POW, 4)
        assert (rec.period, rec.preperiod) == (1, 2)

    @given(small_specs, st.integers(2, 60))
    @settings(max_examples=100, deadline=None)
    def test_against_walk(self, spec, m):
        rec = period_mod(spec, m)
        total = rec.preperiod + rec.period + spec.order + 5
        # walk residues mod m; exact terms would grow far too large here
        r = [v % m for v in spec.init]
        while len(r) < total + rec.period:
            r.append(sum(c * r[-1 - j] for j, c in enumerate(spec.coeffs)) % m)
        for n in range(rec.preperiod, total):
            assert r[n] == r[n + rec.period]
        if math.gcd(spec.coeffs[-1], m) == 1:
            assert rec.preperiod == 0

    @given(small_specs, st.integers(2, 60), st.integers(0, 500))
    @settings(max_examples=100, deadline=None)
    def test_pure_periodicity(self, spec, m, n):
        if math.gcd(spec.coeffs[-1], m) != 1:
            return
        t = period_mod(spec, m).period
        assert term_mod(spec, n + t, m) == term_mod(spec, n, m)

    @pytest.mark.parametrize("spec", [FIB, PELL, TRIB])
    @pytest.mark.parametrize("m", [12, 30, 49, 100, 360])
    def test_composite_divides_lcm(self, spec, m):
        from sympy import factorint

        parts = [period_mod(spec, p**e).period for p, e in factorint(m).items()]
        assert math.lcm(*parts) % period_mod(spec, m).period == 0

    @pytest.mark.parametrize("spec", [FIB, PELL, TRIB])
    def test_prime_period_divides(self, spec):
        from sympy import primerange

        k = spec.order
        disc = discriminant(spec.char_poly)
        for p in primerange(2, 200):
            if (spec.coeffs[-1] * disc) % p == 0:
                continue
            bound = math.lcm(*[p**i - 1 for i in range(1, k + 1)])
            assert bound % period_mod(spec, p).period == 0

    def test_cap(self):
        with pytest.raises(PeriodCapExceeded):
            period_mod(FIB, 10**6 + 3, cap=100)
        with pytest.raises(PeriodCapExceeded):
            period_mod(TWO_POW, 10**6 + 3, cap=100)

    def test_residues(self):
        assert residues_mod(FIB, 7, 10) == [f % 7 for f in terms((1, 1), (0, 1), 10)]
