import csv
import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIB, MERSENNE, PELL, THREE_POW, TRIB, TRIB_TRACE, TWO_POW
from oracles import naive_census, primes, terms
from recdiv import census as cen
from recdiv.errors import DomainError
from recdiv.lucas import FIBONACCI, z_composite
from recdiv.modular import divides_term
from recdiv.recurrence import RecurrenceSpec


class TestCensus:
    def test_fibonacci_100(self):
        rep = cen.census(FIB, 100)
        assert rep.members == (1, 5, 12, 24, 25, 36, 48, 60, 72, 96)
        assert rep.count == 10
        assert rep.checkpoints == (10, 100)

    def test_two_pow_30(self):
        rep = cen.census(TWO_POW, 30)
        assert set(rep.members) == {1} | set(primes(30))
        assert rep.count == 11

    def test_somer(self):
        assert cen.census(MERSENNE, 10**4).members == (1,)

    @pytest.mark.parametrize("spec", [FIB, PELL, TWO_POW, TRIB, TRIB_TRACE], ids=["fib", "pell", "2^n-2", "trib", "trib-trace"])
    def test_oracle_3000(self, spec):
        rep = cen.census(spec, 3000, block=257, workers=3)
        assert set(rep.members) == naive_census(spec.coeffs, spec.init, 3000)

    def test_worker_independence(self):
        reports = [cen.census(TRIB_TRACE, 5000, block=b, workers=w) for b, w in [(64, 1), (1000, 4), (1 << 16, 8)]]
        assert reports[0] == reports[1] == reports[2]

    def test_python_backend_matches(self, monkeypatch):
        from recdiv import _backend

        want = cen.census(PELL, 2000)
        monkeypatch.setattr(_backend, "compiled_kernels", None)
        assert cen.census(PELL, 2000) == want

    def test_big_coefficients(self):
        spec = RecurrenceSpec((2**70 + 1, 3), (0, 1))
        rep = cen.census(spec, 300)
        u = terms(spec.coeffs, spec.init, 301)
        assert set(rep.members) == {n for n in range(1, 301) if u[n] % n == 0}

    def test_members_recheck(self):
        rep = cen.census(TRIB, 10**4)
        assert all(divides_term(TRIB, n) for n in rep.members)

    def test_checkpoint_counts(self):
        rep = cen.census(FIB, 1000, checkpoints=[1, 5, 50, 999, 1000])
        members = rep.members
        assert rep.counts == tuple(sum(1 for m in members if m <= c) for c in rep.checkpoints)
        assert list(rep.counts) == sorted(rep.counts)

    def test_retention_cap(self):
        rep = cen.census(TWO_POW, 1000, retain=50)
        assert rep.members is None and not rep.members_retained
        assert rep.count == cen.census(TWO_POW, 1000).count

    def test_errors(self):
        with pytest.raises(DomainError):
            cen.census(FIB, 0)
        with pytest.raises(DomainError):
            cen.census(FIB, 100, checkpoints=[200])
        with pytest.raises(DomainError):
            cen.census(RecurrenceSpec((2, -1), (0, 1)), 100)

    def test_default_checkpoints(self):
        assert cen.default_checkpoints(5) == [5]
        assert cen.default_checkpoints(1000) == [10, 100, 1000]
        assert cen.default_checkpoints(2500) == [10, 100, 1000, 2500]

    def test_lucas_members_obey_rank(self):
        for n in cen.census(FIB, 10**4).members:
            assert n % z_composite(FIBONACCI, n).z == 0

    @given(
        st.lists(st.integers(-5, 5), min_size=2, max_size=3).filter(lambda c: c[-1] != 0),
        st.data(),
    )
    @settings(max_examples=30, deadline=None)
    def test_random_specs(self, coeffs, data):
        init = data.draw(st.lists(st.integers(-5, 5), min_size=len(coeffs), max_size=len(coeffs)))
        spec = RecurrenceSpec(tuple(coeffs), tuple(init))
        try:
            rep = cen.census(spec, 400, block=97)
        except DomainError:
            return
        assert set(rep.members) == naive_census(spec.coeffs, spec.init, 400)


class TestExcludingZeros:
    def test_two_pow(self):
        rep = cen.census_excluding_zero_multiples(TWO_POW, 400)
        assert rep.members == (1, 341)
        assert rep.excluded_zero_indices == (1,)

    def test_fibonacci_unchanged(self):
        assert cen.census_excluding_zero_multiples(FIB, 100).members == cen.census(FIB, 100).members

    def test_three_pow(self):
        full = cen.census(THREE_POW, 50).members
        want = tuple(n for n in full if not (n % 2 == 0 and n // 2 in primes(25)))
        assert cen.census_excluding_zero_multiples(THREE_POW, 50).members == want


class TestPoly:
    def test_square(self):
        assert cen.census_poly(FIB, cen.PolySpec((0, 0, 1)), 50).members == (1, 12)

    def test_identity_poly(self):
        assert cen.census_poly(TRIB, cen.PolySpec((0, 1)), 500).members == cen.census(TRIB, 500).members

    def test_shifted(self):
        u = terms(TWO_POW.coeffs, TWO_POW.init, 21)
        want = tuple(n for n in range(1, 21) if u[n] % (n + 1) == 0)
        assert cen.census_poly(TWO_POW, cen.PolySpec((1, 1)), 20).members == want

    def test_zero_of_g(self):
        # g(n) = n - 1 vanishes at n = 1, where u_1 = 0 for 2^n - 2 but not for Fibonacci
        g = cen.PolySpec((-1, 1))
        assert 1 in cen.census_poly(TWO_POW, g, 10).members
        assert 1 not in cen.census_poly(FIB, g, 10).members

    def test_negative_values(self):
        g = cen.PolySpec((0, -1))
        assert cen.census_poly(FIB, g, 200).members == cen.census(FIB, 200).members

    def test_constant_rejected(self):
        with pytest.raises(DomainError):
            cen.PolySpec((3,))
        with pytest.raises(DomainError):
            cen.PolySpec((3, 0, 0))


class TestOutput:
    def test_csv_schema(self):
        rep = cen.census(FIB, 10**4)
        rows = list(csv.reader(io.StringIO(rep.to_csv())))
        assert rows[0] == list(cen.CSV_COLUMNS)
        assert [int(r[0]) for r in rows[1:]] == [10, 100, 1000, 10**4]
        counts = [int(r[1]) for r in rows[1:]]
        assert counts == sorted(counts) and counts[-1] == 196

    def test_json_round_trip(self):
        rep = cen.census(FIB, 100)
        data = json.loads(rep.to_json())
        assert data["members"] == list(rep.members)
        assert data["counts"] == [2, 10]
        assert "elapsed" not in data
        assert "elapsed" in json.loads(rep.to_json(include_timing=True))

    def test_ratio_report(self):
        rows = cen.ratio_report(cen.census(FIB, 10**4))
        assert rows[0].delta_count is None
        assert rows[-1].delta_count == rows[-1].count - rows[-2].count
        assert rows[1].count_logx_over_x == pytest.approx(10 * 4.605170185988092 / 100)

    def test_ratio_two_pow(self):
        rep = cen.census(TWO_POW, 10**5)
        row = cen.ratio_report(rep)[-1]
        pi_ratio = 9592 * 11.512925464970229 / 10**5
        assert row.count_logx_over_x >= pi_ratio
        assert row.count_logx_over_x == pytest.approx(pi_ratio, rel=0.02)

    def test_single_checkpoint(self):
        with pytest.raises(DomainError):
            cen.ratio_report(cen.census(FIB, 5))
