"""Finite Buchstab inversion on a prime band.

For squarefree n, with R the primes above CM,

    1[every p | n has M < p <= CM] = 1[every p | n has p > M] * sum_{d | n, p | d => p in R} mu(d).

The check evaluates both sides exactly, the right one as a Moebius sum over
subsets of the prime factors of n lying in R.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

import sympy

from kummerlab.arith.primes import factor_small, smallest_prime_factors
from kummerlab.construct.params import parse_rational
from kummerlab.utils.exceptions import ValidationError


def buchstab_sides(primes: Sequence[int], M: int, C: Fraction) -> Tuple[int, int]:
    """(left, right) for the squarefree n with the given prime factors."""
    left = int(all(M < p <= C * M for p in primes))
    rough = [p for p in primes if p > C * M]
    mobius = sum((-1) ** size for size in range(len(rough) + 1) for _ in combinations(rough, size))
    right = int(all(p > M for p in primes)) * mobius
    return left, right


def buchstab_check(n: int, M: int, C) -> bool:
    """Both sides agree for a squarefree n >= 1."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    factors = sympy.factorint(n)
    if any(e > 1 for e in factors.values()):
        raise ValidationError(f"n={n} is not squarefree", {"n": n})
    left, right = buchstab_sides(sorted(factors), M, parse_rational(C, "C"))
    return left == right


@dataclass
class BuchstabScan:
    limit: int
    checked: int = 0
    failures: List[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def buchstab_scan(limit: int, M: int, C) -> BuchstabScan:
    """Check every squarefree n <= limit."""
    C = parse_rational(C, "C")
    spf = smallest_prime_factors(limit)
    scan = BuchstabScan(limit)
    for n in range(1, limit + 1):
        factors = factor_small(n, spf)
        if any(e > 1 for _, e in factors):
            continue
        scan.checked += 1
        left, right = buchstab_sides([p for p, _ in factors], M, C)
        if left != right:
            scan.failures.append(n)
    return scan
