"""Dirichlet characters modulo a prime, built from a primitive root and a discrete log."""
import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from kummerlab.arith.primes import primes_in, require_prime
from kummerlab.config import settings
from kummerlab.construct.params import parse_rational
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


@lru_cache(maxsize=1024)
def primitive_root(p: int) -> int:
    """Least g with g^((p-1)/q) != 1 mod p for every prime q | p - 1."""
    require_prime(p)
    if p == 2:
        return 1
    cofactors = [(p - 1) // q for q in sympy.factorint(p - 1)]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in cofactors):
            return g
    raise ValidationError(f"no primitive root found mod {p}")


class DiscreteLog:
    """log_g x mod p; a full table for p <= LOG_TABLE_LIMIT, baby-step/giant-step above."""

    def __init__(self, p: int, g: int):
        self.p, self.g = p, g
        self._table: Optional[np.ndarray] = None
        self._baby: Dict[int, int] = {}
        if p <= settings.LOG_TABLE_LIMIT:
            table = np.full(p, -1, dtype=np.int64)
            x = 1
            for e in range(p - 1):
                table[x] = e
                x = x * g % p
            table.setflags(write=False)
            self._table = table
        else:
            self._step = math.isqrt(p - 1) + 1
            x = 1
            for e in range(self._step):
                self._baby.setdefault(x, e)
                x = x * g % p
            self._giant = pow(g, -self._step, p)

    def __call__(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ValidationError(f"0 has no discrete log mod {self.p}")
        if self._table is not None:
            return int(self._table[x])
        y = x
        for i in range(self._step):
            if y in self._baby:
                return (i * self._step + self._baby[y]) % (self.p - 1)
            y = y * self._giant % self.p
        raise ValidationError(f"{x} is not a power of {self.g} mod {self.p}")

    def table(self) -> np.ndarray:
        """log_g x for x in [0, p), -1 at x = 0."""
        if self._table is None:
            table = np.full(self.p, -1, dtype=np.int64)
            x = 1
            for e in range(self.p - 1):
                table[x] = e
                x = x * self.g % self.p
            return table
        return self._table


@lru_cache(maxsize=64)
def discrete_log(p: int, g: int) -> DiscreteLog:
    return DiscreteLog(p, g)


@lru_cache(maxsize=256)
def roots_of_unity(d: int) -> Tuple[complex, ...]:
    """zeta_d^r for 0 <= r < d, with zeta^(d-r) the exact conjugate of zeta^r."""
    roots: List[complex] = [0j] * d
    for r in range(d):
        if 2 * r > d:
            continue
        if r == 0:
            z = 1 + 0j
        elif 2 * r == d:
            z = -1 + 0j
        elif 4 * r == d:
            z = 1j
        else:
            z = cmath.exp(2j * cmath.pi * r / d)
        roots[r] = z
        if r:
            roots[d - r] = z.conjugate()
    return tuple(roots)


@dataclass(frozen=True)
class Character:
    """chi(g^e) = exp(2 pi i j e / (p - 1))."""

    p: int
    g: int
    j: int

    @classmethod
    def create(cls, p: int, j: int) -> "Character":
        require_prime(p)
        return cls(p, primitive_root(p), j % max(p - 1, 1))

    @property
    def order(self) -> int:
        return (self.p - 1) // math.gcd(self.j, self.p - 1)

    @property
    def principal(self) -> bool:
        return self.order == 1

    def power(self, ell: int) -> "Character":
        return Character(self.p, self.g, self.j * ell % max(self.p - 1, 1))

    def conjugate(self) -> "Character":
        return self.power(-1)

    def exponent(self, x: int) -> int:
        """r with chi(x) = zeta_d^r."""
        d = self.order
        step = self.j // math.gcd(self.j, self.p - 1) if self.j else 0
        return step * discrete_log(self.p, self.g)(x) % d

    def __call__(self, x: int) -> complex:
        if x % self.p == 0:
            return 0j
        return roots_of_unity(self.order)[self.exponent(x)]


def exact_sum(counts: Sequence[int]) -> complex:
    """sum_r counts[r] zeta_d^r with compensated real and imaginary parts."""
    roots = roots_of_unity(len(counts))
    real = math.fsum(n * z.real for n, z in zip(counts, roots))
    imag = math.fsum(n * z.imag for n, z in zip(counts, roots))
    return complex(real, imag)


def class_counts(V: Sequence[int], chi: Character) -> List[int]:
    """n_r = #{q in V : chi(q) = zeta_d^r}."""
    counts = [0] * chi.order
    for q in V:
        if q % chi.p == 0:
            raise ValidationError(f"q={q} is not a unit mod {chi.p}", {"q": q})
        counts[chi.exponent(q)] += 1
    return counts


@dataclass(frozen=True)
class BandSum:
    value: complex
    band_size: int

    @property
    def normalized(self) -> float:
        return abs(self.value) / self.band_size if self.band_size else 0.0


def band_char_sum(chi: Character, ell: int, M: int, C) -> BandSum:
    """sum of chi^ell(q) over primes M < q <= CM with q != p."""
    power = chi.power(ell)
    if power.principal:
        raise ValidationError(f"chi^{ell} is principal mod {chi.p}", {"j": chi.j, "ell": ell})
    C = parse_rational(C, "C")
    band = [q for q in primes_in(M, math.floor(C * M)) if q != chi.p]
    return BandSum(exact_sum(class_counts(band, power)), len(band))


def max_band_ratio(p: int, M: int, C, ell: int = 1) -> Tuple[float, int]:
    """Largest |band sum| / #band over the nonprincipal characters mod p, and its index j."""
    best, best_j = 0.0, 0
    for j in range(1, p - 1):
        chi = Character.create(p, j)
        if chi.power(ell).principal:
            continue
        ratio = band_char_sum(chi, ell, M, C).normalized
        if ratio > best:
            best, best_j = ratio, j
    return best, best_j


@dataclass(frozen=True)
class BurgessRow:
    x0: int
    y: int
    magnitude: float

    @property
    def normalized(self) -> float:
        return self.magnitude / self.y


def burgess_profile(chi: Character, x0_grid: Sequence[int], y_grid: Sequence[int]) -> List[BurgessRow]:
    """|sum over x0 < n <= x0 + y of chi(n)| for every grid pair."""
    d, p = chi.order, chi.p
    logs = discrete_log(p, chi.g).table()
    step = chi.j // math.gcd(chi.j, p - 1) if chi.j else 0
    classes = np.where(logs >= 0, (step * logs) % d, d)
    rows = []
    for x0 in x0_grid:
        for y in y_grid:
            if y < 1:
                raise ValidationError(f"interval length must be positive, got {y}")
            n = np.arange(x0 + 1, x0 + y + 1, dtype=np.int64) % p
            counts = np.bincount(classes[n], minlength=d + 1)[:d]
            rows.append(BurgessRow(x0, y, abs(exact_sum(counts.tolist()))))
    return rows


def complete_counts(chi: Character) -> List[int]:
    """Class counts of chi over a full period of units."""
    return [(chi.p - 1) // chi.order] * chi.order
