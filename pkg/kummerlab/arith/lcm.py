"""L_M = lcm(1..M), Q_M = M!/L_M, Wilson residues, psi(M) and CRT."""
import math
from typing import Iterable, Tuple

from sympy.ntheory.modular import crt

from kummerlab.arith.factored import FactoredNat, PrimePower
from kummerlab.arith.primes import floor_log, require_prime, sieve_primes
from kummerlab.utils.exceptions import ValidationError


def _require_positive(M: int) -> None:
    if M < 1:
        raise ValidationError(f"M must be >= 1, got {M}", {"M": M})


def lcm_factored(M: int) -> FactoredNat:
    """lcm(1..M) as p -> alpha_p = floor(log_p M) over primes p <= M."""
    _require_positive(M)
    return FactoredNat(tuple((p, floor_log(p, M)) for p in sieve_primes(M)))


def legendre_valuation(M: int, p: int) -> int:
    """v_p(M!) by Legendre's formula."""
    total, q = 0, p
    while q <= M:
        total += M // q
        q *= p
    return total


def qm_factored(M: int) -> FactoredNat:
    """Q_M = M!/L_M; exponent at p is v_p(M!) - alpha_p."""
    _require_positive(M)
    return FactoredNat.from_map({
        p: legendre_valuation(M, p) - floor_log(p, M) for p in sieve_primes(M)
    })


def wilson_lm_residue(M: int, p: int) -> int:
    """L_M mod p for a prime p > M, as (-1)^d ((d-1)! Q_M)^(-1) with d = p - M."""
    _require_positive(M)
    require_prime(p)
    if p <= M:
        raise ValidationError(f"need p > M, got p={p}, M={M}", {"p": p, "M": M})
    d = p - M
    inner = math.factorial(d - 1) % p * qm_factored(M).mod(p) % p
    sign = -1 if d % 2 else 1
    return sign * pow(inner, -1, p) % p


def c_p(M: int, p: int) -> int:
    """c_p = (-1)^(p-M) ((p-M-1)!)^(-1) mod p, so that L_M = c_p Q_M^(-1) mod p."""
    require_prime(p)
    if p <= M:
        raise ValidationError(f"need p > M, got p={p}, M={M}", {"p": p, "M": M})
    d = p - M
    sign = -1 if d % 2 else 1
    return sign * pow(math.factorial(d - 1) % p, -1, p) % p


def chebyshev_psi(M: int) -> float:
    """psi(M) = sum over p^a <= M of log p = log lcm(1..M)."""
    _require_positive(M)
    return lcm_factored(M).log()


def crt_combine(pairs: Iterable[Tuple[int, PrimePower]]) -> Tuple[int, int]:
    """Combine residues modulo distinct prime powers into (residue, modulus)."""
    pairs = list(pairs)
    seen = set()
    for _, q in pairs:
        if q.p in seen:
            raise ValidationError(f"repeated prime {q.p} in CRT system", {"p": q.p})
        seen.add(q.p)
    if not pairs:
        return 0, 1
    moduli = [q.value() for _, q in pairs]
    residues = [r % m for (r, _), m in zip(pairs, moduli)]
    x, modulus = crt(moduli, residues, check=False)
    return int(x) % int(modulus), int(modulus)
