"""Kummer carry counting.

A carry occurs at level p^a exactly when k mod p^a > n mod p^a, and the number
of such levels is v_p(binom(n, k)). Levels are scanned upwards and the scan
stops at the first level q = p^a with q > k and n mod q >= k: above it k mod q
stays equal to k while n mod q can only grow, so no further carry is possible.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

from kummerlab.kummer.residues import ResidueSystem
from kummerlab.utils.exceptions import MissingLevels, ValidationError


@dataclass(frozen=True)
class CarryProfile:
    """Carry levels of k + (n - k) in base p."""

    p: int
    carry_levels: Tuple[int, ...]
    stop_level: int

    @property
    def count(self) -> int:
        return len(self.carry_levels)


@lru_cache(maxsize=65536)
def _ladder(n: int, p: int) -> Tuple[int, ...]:
    """n mod p^a for a = 1, 2, ... up to and including the first p^a > n."""
    out = []
    q = p
    while True:
        out.append(n % q)
        if q > n:
            return tuple(out)
        q *= p


def _scan(residue_at: Callable[[int], Optional[int]], k: int, p: int,
          level_cap: Optional[int] = None) -> CarryProfile:
    levels = []
    a, q = 1, p
    while True:
        if level_cap is not None and a > level_cap:
            raise MissingLevels(p, f"level cap {level_cap} reached before termination at p={p}")
        r = residue_at(a)
        if r is None:
            raise MissingLevels(p)
        if q > k and r >= k:
            return CarryProfile(p, tuple(levels), a)
        if k % q > r:
            levels.append(a)
        a += 1
        q *= p


def carry_count(n: int, k: int, p: int, level_cap: Optional[int] = None) -> CarryProfile:
    """Carry profile of binom(n, k) at the prime p for an explicit integer n."""
    if k < 0 or k > n:
        raise ValidationError(f"need 0 <= k <= n, got n={n}, k={k}", {"n": n, "k": k})
    ladder = _ladder(n, p)

    def residue_at(a: int) -> int:
        # past the ladder n < p^a, so n mod p^a = n
        return ladder[a - 1] if a <= len(ladder) else n

    return _scan(residue_at, k, p, level_cap)


def carry_count_residues(rs: ResidueSystem, k: int, p: int,
                         level_cap: Optional[int] = None) -> CarryProfile:
    """Carry profile at p for an integer given by its residue system."""
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    return _scan(lambda a: rs.residue(p, a), k, p, level_cap)
