"""Prime sieving, factored integers and the basic lcm objects."""
from kummerlab.arith.factored import ExactRational, FactoredNat, PrimePower, nearest_int_distance
from kummerlab.arith.lcm import (
    c_p,
    chebyshev_psi,
    crt_combine,
    lcm_factored,
    legendre_valuation,
    qm_factored,
    wilson_lm_residue,
)
from kummerlab.arith.primes import alpha_beta, floor_log, primes_in, sieve_primes

__all__ = [
    "ExactRational",
    "FactoredNat",
    "PrimePower",
    "nearest_int_distance",
    "c_p",
    "chebyshev_psi",
    "crt_combine",
    "lcm_factored",
    "legendre_valuation",
    "qm_factored",
    "wilson_lm_residue",
    "alpha_beta",
    "floor_log",
    "primes_in",
    "sieve_primes",
]
