"""Factored integers, prime powers and exact rationals."""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

from kummerlab.utils.exceptions import ValidationError

ExactRational = Fraction


def nearest_int_distance(x: Fraction) -> Fraction:
    """||x||, the exact distance from x to the nearest integer."""
    frac = x - math.floor(x)
    return min(frac, 1 - frac)


@dataclass(frozen=True, order=True)
class PrimePower:
    """A prime power p^a with a >= 1."""

    p: int
    a: int

    def __post_init__(self):
        if self.p < 2:
            raise ValidationError(f"prime power base must be prime, got {self.p}")
        if self.a < 1:
            raise ValidationError(f"prime power exponent must be >= 1, got {self.a}")

    def value(self) -> int:
        return self.p ** self.a

    def __str__(self) -> str:
        return f"{self.p}^{self.a}"


@dataclass(frozen=True)
class FactoredNat:
    """A positive integer as a canonical prime -> exponent map.

    Only positive exponents are stored and primes are kept ascending, so
    equality of two FactoredNat values is equality of the integers.
    """

    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValidationError("factor primes must be strictly increasing")
            if e < 1:
                raise ValidationError(f"exponent at {p} must be >= 1, got {e}")
            last = p

    @classmethod
    def from_map(cls, factors: Mapping[int, int]) -> "FactoredNat":
        return cls(tuple(sorted((int(p), int(e)) for p, e in factors.items() if e)))

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self.factors)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def factor_of(self, p: int) -> int:
        """Exponent of p (0 when p does not divide)."""
        for q, e in self.factors:
            if q == p:
                return e
            if q > p:
                break
        return 0

    def to_integer(self) -> int:
        return math.prod(p ** e for p, e in self.factors)

    def mod(self, modulus: int) -> int:
        """The represented integer reduced mod ``modulus`` without materialising it."""
        r = 1 % modulus
        for p, e in self.factors:
            r = r * pow(p, e, modulus) % modulus
        return r

    def log(self) -> float:
        return math.fsum(e * math.log(p) for p, e in self.factors)

    def bit_length_bound(self) -> float:
        return math.fsum(e * math.log2(p) for p, e in self.factors)

    def without(self, p: int) -> "FactoredNat":
        return FactoredNat(tuple((q, e) for q, e in self.factors if q != p))

    def __mul__(self, other: "FactoredNat") -> "FactoredNat":
        merged = self.as_dict()
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return FactoredNat.from_map(merged)

    def to_json(self) -> Dict[str, int]:
        return {str(p): e for p, e in self.factors}

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
