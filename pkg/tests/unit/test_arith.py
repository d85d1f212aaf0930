"""Tests for primes, factored integers, L_M, Q_M and CRT."""
import math
import random
from fractions import Fraction
from functools import reduce

import pytest

from kummerlab.arith import (
    FactoredNat,
    PrimePower,
    alpha_beta,
    c_p,
    chebyshev_psi,
    crt_combine,
    floor_log,
    lcm_factored,
    nearest_int_distance,
    primes_in,
    qm_factored,
    sieve_primes,
    wilson_lm_residue,
)
from kummerlab.utils.exceptions import ValidationError


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _lcm_oracle(M):
    return reduce(lambda a, b: a * b // math.gcd(a, b), range(1, M + 1), 1)


class TestSieve:
    def test_small_limits(self):
        assert sieve_primes(0) == []
        assert sieve_primes(1) == []
        assert sieve_primes(10) == [2, 3, 5, 7]

    def test_matches_trial_division(self):
        primes = sieve_primes(100)
        assert len(primes) == 25
        assert primes == [n for n in range(101) if _is_prime(n)]

    def test_negative_limit_rejected(self):
        with pytest.raises(ValidationError):
            sieve_primes(-1)

    def test_primes_in_is_half_open(self):
        assert primes_in(10, 20) == [11, 13, 17, 19]
        assert primes_in(11, 13) == [13]
        assert primes_in(20, 20) == []


class TestAlphaBeta:
    def test_examples(self):
        assert tuple(alpha_beta(2, 10, 20)) == (3, 5, 2, 4)
        assert tuple(alpha_beta(11, 10, 20)) == (0, 2, 2, 121)

    def test_top_band_has_alpha_zero(self):
        for p in primes_in(30, 60):
            assert alpha_beta(p, 30, 60).alpha == 0

    def test_power_definition(self):
        for K in range(2, 300):
            for M in (2, max(2, K // 2), K):
                for p in sieve_primes(K):
                    alpha, beta, B, m = alpha_beta(p, M, K)
                    assert p ** alpha <= M < p ** (alpha + 1)
                    assert p ** (beta - 1) <= K < p ** beta
                    assert B == beta - alpha and m == p ** B

    def test_floor_log_at_exact_powers(self):
        assert floor_log(2, 8) == 3
        assert floor_log(3, 80) == 3
        assert floor_log(3, 81) == 4

    def test_prime_above_K_rejected(self):
        with pytest.raises(ValidationError):
            alpha_beta(23, 10, 20)


class TestFactoredNat:
    def test_canonical_form(self):
        a = FactoredNat.from_map({3: 1, 2: 2, 5: 0})
        assert a.factors == ((2, 2), (3, 1))
        assert a.to_integer() == 12
        assert str(a) == "2^2*3"

    def test_zero_exponent_forbidden(self):
        with pytest.raises(ValidationError):
            FactoredNat(((2, 0),))

    def test_mod_without_materialising(self):
        a = FactoredNat(((2, 100), (3, 50)))
        assert a.mod(1_000_003) == (2 ** 100 * 3 ** 50) % 1_000_003

    def test_multiplication(self):
        a = FactoredNat.from_map({2: 1, 3: 1}) * FactoredNat.from_map({3: 2, 7: 1})
        assert a.as_dict() == {2: 1, 3: 3, 7: 1}

    def test_prime_power(self):
        assert PrimePower(3, 2).value() == 9
        assert str(PrimePower(3, 2)) == "3^2"
        with pytest.raises(ValidationError):
            PrimePower(5, 0)

    def test_nearest_int_distance(self):
        assert nearest_int_distance(Fraction(7, 3)) == Fraction(1, 3)
        assert nearest_int_distance(Fraction(-1, 4)) == Fraction(1, 4)
        assert nearest_int_distance(Fraction(5)) == 0


class TestLcm:
    def test_examples(self):
        assert lcm_factored(1).to_integer() == 1
        assert lcm_factored(10).as_dict() == {2: 3, 3: 2, 5: 1, 7: 1}
        assert lcm_factored(10).to_integer() == 2520

    def test_matches_gcd_oracle(self):
        for M in range(1, 301):
            assert lcm_factored(M).to_integer() == _lcm_oracle(M)

    def test_qm(self):
        assert qm_factored(1).to_integer() == 1
        assert qm_factored(10).as_dict() == {2: 5, 3: 2, 5: 1}
        for M in range(1, 60):
            assert qm_factored(M).to_integer() * lcm_factored(M).to_integer() == math.factorial(M)

    def test_psi(self):
        assert chebyshev_psi(1) == 0.0
        assert chebyshev_psi(10) == pytest.approx(math.log(2520), abs=1e-9)
        assert chebyshev_psi(100) == pytest.approx(math.log(_lcm_oracle(100)), abs=1e-6)
        for M in range(2, 201):
            assert chebyshev_psi(M) == pytest.approx(math.log(_lcm_oracle(M)), rel=1e-9)


class TestWilson:
    def test_examples(self):
        assert wilson_lm_residue(10, 11) == 1
        assert wilson_lm_residue(10, 13) == 11

    def test_matches_direct_residue(self):
        L = 1
        for M in range(1, 301):
            L = L * M // math.gcd(L, M)
            for p in primes_in(M, M + 100):
                assert wilson_lm_residue(M, p) == L % p, (M, p)

    def test_c_p_relation(self):
        # L_M = c_p Q_M^-1 mod p
        for M in (10, 17, 30):
            for p in primes_in(M, 2 * M):
                Q = qm_factored(M).mod(p)
                assert c_p(M, p) * pow(Q, -1, p) % p == lcm_factored(M).mod(p)

    def test_rejects_small_prime(self):
        with pytest.raises(ValidationError):
            wilson_lm_residue(10, 7)


class TestCrt:
    def test_examples(self):
        assert crt_combine([(1, PrimePower(2, 1)), (2, PrimePower(3, 1))]) == (5, 6)
        assert crt_combine([(0, PrimePower(7, 2))]) == (0, 49)
        assert crt_combine([]) == (0, 1)

    def test_random_systems(self):
        rng = random.Random(20240611)
        primes = sieve_primes(60)
        for _ in range(50):
            chosen = rng.sample(primes, 5)
            pairs = [(rng.randrange(p ** 2), PrimePower(p, 2)) for p in chosen]
            x, modulus = crt_combine(pairs)
            assert modulus == math.prod(p ** 2 for p in chosen)
            for r, q in pairs:
                assert x % q.value() == r

    def test_repeated_prime_rejected(self):
        with pytest.raises(ValidationError):
            crt_combine([(1, PrimePower(2, 1)), (3, PrimePower(2, 2))])
