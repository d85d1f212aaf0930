"""Prime sieving, integer floor-logs and the local exponents alpha_p, beta_p."""
from functools import lru_cache
from typing import List, NamedTuple

import numpy as np
from sympy import isprime

from kummerlab.utils.exceptions import ValidationError


@lru_cache(maxsize=16)
def _prime_mask(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if mask[p]:
            mask[p * p::p] = False
    mask.setflags(write=False)
    return mask


def sieve_primes(limit: int) -> List[int]:
    """All primes <= limit in ascending order."""
    if limit < 0:
        raise ValidationError(f"limit must be >= 0, got {limit}")
    if limit < 2:
        return []
    return np.flatnonzero(_prime_mask(limit)).tolist()


def primes_in(lo: int, hi: int) -> List[int]:
    """Primes in the half-open interval (lo, hi]."""
    if hi < 2 or hi <= lo:
        return []
    return [p for p in sieve_primes(hi) if p > lo]


@lru_cache(maxsize=8)
def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[n] = least prime factor of n for 2 <= n <= limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p] = p
            if p * p <= limit:
                block = spf[p * p::p]
                block[block == 0] = p
    spf.setflags(write=False)
    return spf


def factor_small(n: int, spf: np.ndarray) -> List[tuple]:
    """Factor n <= len(spf) - 1 as [(p, e), ...] using a least-prime-factor table."""
    out = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def require_prime(p: int, name: str = "p") -> None:
    if p < 2 or not isprime(p):
        raise ValidationError(f"{name} must be prime, got {p}", {name: p})


def floor_log(p: int, x: int) -> int:
    """Largest a >= 0 with p**a <= x, by repeated integer multiplication."""
    if p < 2:
        raise ValidationError(f"base must be >= 2, got {p}")
    if x < 1:
        raise ValidationError(f"argument must be >= 1, got {x}")
    a, q = 0, p
    while q <= x:
        a += 1
        q *= p
    return a


class LocalExponents(NamedTuple):
    alpha: int
    beta: int
    B: int
    m: int


def alpha_beta(p: int, M: int, K: int) -> LocalExponents:
    """(alpha_p, beta_p, B_p, m_p) for a prime p <= K.

    alpha_p is the largest a with p^a <= M, beta_p is one more than the
    largest a with p^a <= K, B_p = beta_p - alpha_p and m_p = p^B_p.
    """
    if M < 2 or K < M:
        raise ValidationError(f"need 2 <= M <= K, got M={M}, K={K}")
    if p > K:
        raise ValidationError(f"p={p} exceeds K={K}", {"p": p, "K": K})
    alpha = floor_log(p, M)
    beta = floor_log(p, K) + 1
    B = beta - alpha
    return LocalExponents(alpha, beta, B, p ** B)
