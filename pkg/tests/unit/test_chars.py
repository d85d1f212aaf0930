"""Tests for characters, band sums, interval profiles and cyclotomic mixing."""
import cmath
import math

import numpy as np
import pytest

from kummerlab.arith import primes_in, sieve_primes
from kummerlab.chars import (
    Character,
    DiscreteLog,
    band_char_sum,
    burgess_profile,
    class_counts,
    complete_counts,
    is_zero,
    max_band_ratio,
    mixing_from_classes,
    mixing_ratio,
    primitive_root,
    reduce_cyclotomic,
)
from kummerlab.config import settings
from kummerlab.utils.exceptions import ValidationError


class TestPrimitiveRoot:
    def test_examples(self):
        assert primitive_root(2) == 1
        assert primitive_root(7) == 3
        assert primitive_root(11) == 2
        assert primitive_root(23) == 5

    def test_generates_units(self):
        for p in sieve_primes(300)[1:]:
            g = primitive_root(p)
            assert len({pow(g, e, p) for e in range(p - 1)}) == p - 1

    def test_composite_rejected(self):
        with pytest.raises(ValidationError):
            primitive_root(15)


class TestDiscreteLog:
    def test_table(self):
        log = DiscreteLog(31, primitive_root(31))
        for x in range(1, 31):
            assert pow(3, log(x), 31) == x
        with pytest.raises(ValidationError):
            log(31)

    def test_baby_step_giant_step(self, monkeypatch):
        monkeypatch.setattr(settings, "LOG_TABLE_LIMIT", 10)
        p = 1009
        g = primitive_root(p)
        log = DiscreteLog(p, g)
        for x in range(1, p):
            e = log(x)
            assert 0 <= e < p - 1 and pow(g, e, p) == x
        assert log.table()[1] == 0


class TestCharacter:
    def test_values(self):
        chi = Character.create(7, 1)
        assert chi.order == 6 and not chi.principal
        assert chi(1) == 1
        assert chi(7) == 0
        assert chi(3) == pytest.approx(cmath.exp(2j * cmath.pi / 6))

    def test_legendre_symbol(self):
        p = 101
        chi = Character.create(p, 50)
        assert chi.order == 2
        for x in range(1, p):
            euler = 1 if pow(x, 50, p) == 1 else -1
            assert chi(x) == euler

    def test_multiplicative(self):
        chi = Character.create(31, 7)
        for a in range(1, 31):
            for b in range(1, 31, 4):
                assert chi(a) * chi(b) == pytest.approx(chi(a * b), abs=1e-12)

    def test_power_and_conjugate(self):
        chi = Character.create(13, 5)
        assert chi.power(12).principal
        assert chi.conjugate().j == 7
        for x in range(1, 13):
            assert chi.conjugate()(x) == chi(x).conjugate()


class TestBandSums:
    def test_class_counts(self):
        chi = Character.create(13, 1)
        V = primes_in(13, 100)
        counts = class_counts(V, chi)
        assert sum(counts) == len(V) and len(counts) == 12
        assert class_counts(V, Character.create(13, 0)) == [len(V)]
        with pytest.raises(ValidationError):
            class_counts([26], chi)

    def test_legendre_band(self):
        report = band_char_sum(Character.create(101, 50), 1, 50, 2)
        assert report.band_size == 10
        assert report.value == pytest.approx(-4)
        assert report.normalized == pytest.approx(0.4)

    def test_conjugate_sum_is_exact_conjugate(self):
        chi = Character.create(97, 5)
        ours = band_char_sum(chi, 1, 40, "3/2").value
        theirs = band_char_sum(chi.conjugate(), 1, 40, "3/2").value
        assert theirs == ours.conjugate()

    def test_principal_power_rejected(self):
        with pytest.raises(ValidationError):
            band_char_sum(Character.create(101, 50), 2, 50, 2)

    def test_empty_band(self):
        report = band_char_sum(Character.create(11, 1), 1, 10, "11/10")
        assert report.band_size == 0
        assert report.value == 0 and report.normalized == 0.0

    def test_max_ratio_bounded(self):
        ratio, j = max_band_ratio(101, 50, 2)
        assert 0.4 <= ratio <= 1 + 1e-12
        assert 1 <= j < 100

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [211, 401])
    def test_band_saving_at_half_p(self, p):
        # band (p/2, p); at p = 101 it holds only 10 primes and is only bounded above
        ratio, _ = max_band_ratio(p, p // 2, 2)
        assert ratio < 0.6


class TestBurgess:
    def test_full_period_cancels(self):
        chi = Character.create(53, 4)
        rows = burgess_profile(chi, [0, 17], [53])
        assert all(row.magnitude < 1e-9 for row in rows)

    def test_unit_interval(self):
        chi = Character.create(53, 4)
        rows = burgess_profile(chi, range(0, 60, 7), [1])
        assert all(row.normalized <= 1 + 1e-12 for row in rows)

    def test_matches_direct_sum(self):
        chi = Character.create(61, 3)
        for row in burgess_profile(chi, [5, 40], [10, 33]):
            direct = sum(chi(n) for n in range(row.x0 + 1, row.x0 + row.y + 1))
            assert row.magnitude == pytest.approx(abs(direct), abs=1e-9)

    def test_rejects_empty_interval(self):
        with pytest.raises(ValidationError):
            burgess_profile(Character.create(53, 4), [0], [0])

    def test_complete_sum_vanishes(self):
        for j in (1, 2, 13, 26):
            chi = Character.create(53, j)
            counts = complete_counts(chi)
            assert counts == class_counts(range(1, 53), chi)
            assert is_zero(counts, chi.order)


class TestCyclotomic:
    def test_reduction(self):
        assert is_zero([1, 0, 1, 0], 4)
        assert is_zero([1, 1, 1], 3)
        assert not is_zero([1, 0, 0], 3)
        assert reduce_cyclotomic([0, 0, 0, 1], 4) == (0, -1)

    def test_balanced_example(self):
        report = mixing_from_classes([10, 10], 10)
        assert report.coeff_abs == pytest.approx(252)
        assert report.binom_ref == 184756
        assert report.ratio == pytest.approx(252 / 184756)
        assert report.closed_form == 252

    def test_odd_degree_vanishes(self):
        report = mixing_from_classes([10, 10], 9)
        assert report.vanishes and report.coeff_abs == 0.0 and report.closed_form == 0

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_balanced_closed_form(self, d):
        counts = [12] * d
        for k in range(1, 12 * d):
            report = mixing_from_classes(counts, k)
            assert report.balanced
            assert report.coeff_abs == pytest.approx(report.closed_form, rel=1e-9, abs=1e-9)
            assert report.vanishes == (k % d != 0)

    def test_matches_complex_product(self):
        chi = Character.create(13, 1)
        V = primes_in(13, 80)
        poly = np.array([1 + 0j])
        for q in V:
            poly = np.convolve(poly, np.array([1, chi(q)]))
        for k in (1, 3, len(V) // 2):
            report = mixing_ratio(V, chi, k)
            assert report.coeff_abs == pytest.approx(abs(poly[k]), rel=1e-9, abs=1e-9)
            assert report.ratio <= 1

    def test_degree_range(self):
        with pytest.raises(ValidationError):
            mixing_from_classes([3, 3], 0)
        with pytest.raises(ValidationError):
            mixing_from_classes([3, 3], 6)

    def test_stirling_reference(self):
        report = mixing_from_classes([12, 12, 12], 6)
        expected = math.exp(-(2 / 3) * 6 * math.log(36 / 6))
        assert report.stirling == pytest.approx(expected)
