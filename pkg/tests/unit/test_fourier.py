"""Tests for denominators, local transforms, criterion sums, box heights and the combinatorial identities."""
import math
import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from kummerlab.arith import nearest_int_distance, primes_in
from kummerlab.construct import ConstructionParams, build_local_sets
from kummerlab.fourier import (
    BoxInstance,
    FreqVector,
    box_family,
    buchstab_check,
    buchstab_scan,
    criterion_partial_sum,
    elem_sym,
    exact_denominator,
    height_histogram,
    local_fourier,
    phi,
    pivot_identity,
    qm_box_height,
    random_freq_vector,
    signed_residue,
    t_r_census,
)
from kummerlab.utils.exceptions import BudgetExceeded, ValidationError


@pytest.fixture
def params():
    return ConstructionParams(M=10, C=2, theta="9/10")


class TestDenominators:
    def test_examples(self, params):
        a = FreqVector.create({11: 11}, params)
        assert phi(a) == Fraction(2520, 11)
        assert exact_denominator(a).q == 11
        b = FreqVector.create({11: 1}, params)
        assert exact_denominator(b).q == 121
        c = FreqVector.create({2: 1}, params)
        assert exact_denominator(c).q == 4

    def test_zero_mode_rejected(self, params):
        a = FreqVector.create({11: 121, 13: 0}, params)
        assert a.is_zero()
        with pytest.raises(ValidationError):
            phi(a)

    def test_prime_outside_range_rejected(self, params):
        with pytest.raises(ValidationError):
            FreqVector.create({23: 1}, params)

    @pytest.mark.parametrize("M", [10, 20])
    def test_random_modes(self, M):
        params = ConstructionParams(M=M, C=2, theta="9/10")
        rng = random.Random(M)
        for _ in range(1000):
            report = exact_denominator(random_freq_vector(params, rng))
            assert report.value.denominator == report.q
            assert report.lower_bound_holds

    @pytest.mark.slow
    def test_random_modes_at_forty(self):
        params = ConstructionParams(M=40, C=2, theta="9/10")
        rng = random.Random(40)
        for _ in range(1000):
            assert exact_denominator(random_freq_vector(params, rng)).lower_bound_holds


class TestLocalFourier:
    def test_direct_and_fft_agree(self, params):
        for A in build_local_sets(params).values():
            direct = local_fourier(A, "direct")
            fast = local_fourier(A, "fft")
            assert direct.method == "direct" and fast.method == "fft"
            assert np.allclose(direct.coefficients, fast.coefficients, atol=1e-9)

    def test_normalisation_and_parseval(self, params):
        for A in build_local_sets(params).values():
            transform = local_fourier(A)
            assert transform.coefficient(0) == 1
            assert transform.size == A.size()
            assert transform.parseval_error() < 1e-9

    def test_prefix_weights(self, params):
        transform = local_fourier(build_local_sets(params)[13])
        assert transform.H == 6
        weights = transform.prefix_weights()
        assert sorted(weights) == [-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6]
        for h in range(1, 7):
            assert weights[h] == pytest.approx(weights[-h], abs=1e-12)
        assert transform.l_star() == pytest.approx(math.fsum(weights.values()))
        table = transform.weight_table()
        assert table.size == 13 and table[6] == 0 and table[7] == weights[1]
        with pytest.raises(ValidationError):
            transform.prefix_weight(0)

    def test_unknown_method(self, params):
        with pytest.raises(ValidationError):
            local_fourier(build_local_sets(params)[11], "slow")


class TestCriterion:
    def test_mode_count(self, params):
        report = criterion_partial_sum(params, N=1000, s=1, h_cap=2)
        assert report.count == 16 and not report.truncated
        assert report.value > 0

    def test_workers_do_not_change_the_sum(self, params):
        one = criterion_partial_sum(params, N=1000, s=2, h_cap=2, workers=1)
        two = criterion_partial_sum(params, N=1000, s=2, h_cap=2, workers=2)
        assert one.value == two.value and one.count == two.count

    def test_larger_N_never_increases(self, params):
        small = criterion_partial_sum(params, N=10, s=1, h_cap=3)
        large = criterion_partial_sum(params, N=10_000, s=1, h_cap=3)
        assert large.value <= small.value

    def test_count_cap(self, params):
        report = criterion_partial_sum(params, N=100, s=2, h_cap=1, count_cap=10)
        assert report.count == 10 and report.truncated
        exact = criterion_partial_sum(params, N=100, s=2, h_cap=1, count_cap=24)
        assert exact.count == 24 and not exact.truncated

    def test_distances_match_phi(self, params):
        report = criterion_partial_sum(params, N=500, s=1, h_cap=5, keep_modes=True)
        local = build_local_sets(params)
        for mode in report.modes:
            (p,), (h,) = mode.support, mode.heights
            a = FreqVector.create({p: h * (local[p].m // p)}, params)
            assert mode.distance == nearest_int_distance(phi(a))
            assert mode.term <= mode.weight

    def test_N_from_R(self, params):
        report = criterion_partial_sum(params, R=10, s=1, h_cap=1)
        assert report.N >= 10 and report.R == 10
        assert report.low_denominator_count <= report.count

    @pytest.mark.parametrize("s", [0, 5])
    def test_empty_shell_sums_to_zero(self, params, s):
        # four top-band primes 11, 13, 17, 19: no support of size 0 or 5
        report = criterion_partial_sum(params, N=1000, s=s, h_cap=5)
        assert report.value == 0 and report.count == 0
        assert not report.truncated and report.modes == []

    def test_invalid_shell(self, params):
        with pytest.raises(ValidationError):
            criterion_partial_sum(params, N=10, s=-1)
        with pytest.raises(ValidationError):
            criterion_partial_sum(params, N=10, s=1, h_cap=0)
        with pytest.raises(ValidationError):
            criterion_partial_sum(params, s=1)


class TestBoxes:
    def test_signed_residue(self):
        assert signed_residue(6, 11) == -5
        assert signed_residue(5, 11) == 5
        assert signed_residue(-1, 7) == -1

    def test_height_example(self):
        assert qm_box_height(11, BoxInstance((), (11,), 1), 10) == 1

    def test_heights_are_signed_and_nonzero(self, params):
        for box in box_family(params, 13, max_petals=2):
            h = qm_box_height(13, box, 10)
            assert h is not None and -6 <= h <= 6

    def test_invalid_boxes(self):
        with pytest.raises(ValidationError):
            BoxInstance((), (11,), 0)
        with pytest.raises(ValidationError):
            BoxInstance((11,), (11,), 1)
        with pytest.raises(ValidationError):
            BoxInstance((), (11,), 22)
        with pytest.raises(ValidationError):
            qm_box_height(7, BoxInstance((), (7,), 1), 10)

    @pytest.mark.parametrize("p", [11, 13])
    def test_histogram_linear_in_t(self, params, p):
        boxes = box_family(params, p, max_petals=2, r_bound=10)
        H = (p - 1) // 2
        grid = [H * i / 19 for i in range(20)]
        report = height_histogram(p, boxes, grid, 10)
        assert len(report.rows) == 20
        assert report.zero_heights == 0
        assert report.rows[0].count == 0 and report.rows[0].ratio is None
        assert report.rows[-1].count == report.total
        for row in report.rows:
            assert row.count <= 3 * (row.t / H) * report.total + 3

    def test_census_empty_petal_set(self, params):
        report = t_r_census(params, (), (11, 13), 0, 10, 0)
        assert report.count == 0 and report.e_term == 1

    def test_census_matches_brute_force(self, params):
        W = (11, 13, 17, 19)
        report = t_r_census(params, (), W, 1, 20, 0, workers=1)
        local = build_local_sets(params)
        expected, instances = [], 0
        for q in W:
            transform = local_fourier(local[q])
            for r in list(range(-40, -20)) + list(range(21, 41)):
                if r % q == 0:
                    continue
                instances += 1
                expected.append(transform.prefix_weight(qm_box_height(q, BoxInstance((), (q,), r), 10)))
        assert report.instances == instances == 148
        assert report.count == pytest.approx(math.fsum(expected), rel=1e-12)
        assert report.e_term == pytest.approx(math.fsum(local_fourier(local[q]).l_star() for q in W))

    def test_census_limits(self, params):
        with pytest.raises(BudgetExceeded):
            t_r_census(params, (), (11, 13, 17), 2, 10, 0, max_petals=2)
        with pytest.raises(ValidationError):
            t_r_census(params, (11,), (11, 13), 1, 10, 0)


class TestSymmetric:
    def test_examples(self):
        assert elem_sym([1, 2, 3], 2) == 11
        assert elem_sym([1, 2, 3], 0) == 1
        assert elem_sym([1, 2, 3], 3) == 6
        assert elem_sym([], 0) == 1

    @pytest.mark.parametrize("a", [-1, 4])
    def test_order_out_of_range(self, a):
        with pytest.raises(ValidationError):
            elem_sym([1, 2, 3], a)

    def test_pivot_order_out_of_range(self):
        with pytest.raises(ValidationError):
            pivot_identity([0.5, 0.25], 3)
        with pytest.raises(ValidationError):
            pivot_identity([0.5, 0.25], 0)

    def test_pivot_identity(self):
        rng = random.Random(3)
        for k in range(1, 6):
            weights = [rng.random() for _ in range(9)]
            lhs, rhs = pivot_identity(weights, k)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_pivot_identity_seeded_lists(self):
        rng = random.Random(2024)
        for _ in range(100):
            weights = [rng.random() for _ in range(30)]
            lhs, rhs = pivot_identity(weights, 5)
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)

    def test_matches_subset_sum(self):
        weights = [0.5, 1.5, 2.0, 0.25, 3.0]
        for a in range(6):
            brute = math.fsum(math.prod(c) for c in combinations(weights, a))
            assert elem_sym(weights, a) == pytest.approx(brute, rel=1e-12)


class TestBuchstab:
    @pytest.mark.parametrize("n", [1, 6, 11, 143, 23, 11 * 23, 2 * 11, 11 * 13 * 17])
    def test_examples(self, n):
        assert buchstab_check(n, 10, 2)

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValidationError):
            buchstab_check(12, 10, 2)
        with pytest.raises(ValidationError):
            buchstab_check(0, 10, 2)

    def test_scan_small(self):
        scan = buchstab_scan(10_000, 10, 2)
        assert scan.passed and scan.checked > 6000

    @pytest.mark.slow
    @pytest.mark.parametrize("M,C", [(10, 2), (20, "3/2")])
    def test_scan(self, M, C):
        assert buchstab_scan(10 ** 5, M, C).passed

    def test_band_primes(self):
        assert primes_in(10, 20) == [11, 13, 17, 19]
