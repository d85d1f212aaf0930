"""The local admissible sets A_p in Z/m_p Z and the density delta."""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List

import numpy as np

from kummerlab.arith.lcm import lcm_factored
from kummerlab.arith.primes import alpha_beta, sieve_primes
from kummerlab.config import settings
from kummerlab.construct.params import ConstructionParams
from kummerlab.utils.exceptions import BudgetExceeded, ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LocalSet:
    """A_p: y = 0, or y >= ceil((K+1)/p^alpha) with every prefix y mod p^b
    (1 <= b < B) either 0 or at least theta p^b."""

    p: int
    alpha: int
    beta: int
    B: int
    m: int
    K: int
    theta: Fraction
    u_p_residue: int

    def __post_init__(self):
        if self.B != self.beta - self.alpha or self.B < 1:
            raise ValidationError(f"inconsistent levels at p={self.p}")
        if self.m != self.p ** self.B:
            raise ValidationError(f"m must equal p^B at p={self.p}")
        if self.u_p_residue % self.p == 0:
            raise ValidationError(f"u_p must be a unit mod p={self.p}")

    @property
    def lower_cut(self) -> int:
        """ceil((K+1)/p^alpha)."""
        return -(-(self.K + 1) // self.p ** self.alpha)

    def _strip_ok(self, s: int, pb: int) -> bool:
        return s == 0 or s * self.theta.denominator >= self.theta.numerator * pb

    def contains(self, y: int) -> bool:
        if not 0 <= y < self.m:
            raise ValidationError(f"residue {y} outside [0, {self.m})", {"p": self.p, "y": y})
        if y == 0:
            return True
        if y < self.lower_cut:
            return False
        pb = 1
        for _ in range(1, self.B):
            pb *= self.p
            if not self._strip_ok(y % pb, pb):
                return False
        return True

    def mask(self) -> np.ndarray:
        """Boolean membership array over 0..m-1."""
        return _mask(self)

    def size(self) -> int:
        return int(self.mask().sum())


@lru_cache(maxsize=512)
def _mask(A: LocalSet) -> np.ndarray:
    if A.m > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"m_p={A.m} exceeds the enumeration budget {settings.ENUMERATION_BUDGET}",
            {"p": A.p, "m": A.m},
        )
    y = np.arange(A.m, dtype=np.int64)
    ok = y >= A.lower_cut
    pb = 1
    for _ in range(1, A.B):
        pb *= A.p
        s = y % pb
        ok &= (s == 0) | (s * A.theta.denominator >= A.theta.numerator * pb)
    ok |= y == 0
    ok.setflags(write=False)
    return ok


def local_set_contains(A: LocalSet, y: int) -> bool:
    return A.contains(y)


def local_set_size(A: LocalSet) -> int:
    """|A_p| by enumeration of all residues mod m_p."""
    return A.size()


def build_local_set(p: int, params: ConstructionParams) -> LocalSet:
    ex = alpha_beta(p, params.M, params.K)
    u_p = lcm_factored(params.M).without(p).mod(ex.m)
    return LocalSet(p, ex.alpha, ex.beta, ex.B, ex.m, params.K, params.theta, u_p)


@lru_cache(maxsize=64)
def _build_all(M: int, C: Fraction, theta: Fraction) -> Dict[int, LocalSet]:
    params = ConstructionParams(M=M, C=C, theta=theta)
    return {p: build_local_set(p, params) for p in sieve_primes(params.K)}


def build_local_sets(params: ConstructionParams) -> Dict[int, LocalSet]:
    """A_p for every prime p <= K, keyed by p."""
    return _build_all(params.M, params.C, params.theta)


@dataclass(frozen=True)
class DensityRow:
    p: int
    band: str
    alpha: int
    beta: int
    m: int
    size: int
    prefix_levels: int
    log_contribution: float

    @property
    def ratio(self) -> float:
        return self.size / self.m


@dataclass(frozen=True)
class DensityReport:
    log_delta_inv: float
    prediction: float
    top_band_share: float
    small_prime_share: float
    rows: List[DensityRow]


def density(params: ConstructionParams) -> DensityReport:
    """log delta^-1 = sum_p log(m_p/|A_p|), per-prime table and the leading-order prediction."""
    rows = []
    for p, A in build_local_sets(params).items():
        size = A.size()
        rows.append(DensityRow(
            p=p,
            band="top" if p > params.M else "small",
            alpha=A.alpha,
            beta=A.beta,
            m=A.m,
            size=size,
            prefix_levels=A.B - 1,
            log_contribution=math.log(A.m / size),
        ))
    total = math.fsum(r.log_contribution for r in rows)
    top = math.fsum(r.log_contribution for r in rows if r.band == "top")
    M = params.M
    prediction = float(params.C - 1) * math.log(1 / (1 - float(params.theta))) * M / math.log(M)
    logger.info(f"log 1/delta = {total:.6f} (leading-order prediction {prediction:.6f}) for {params.describe()}")
    return DensityReport(total, prediction, top, total - top, rows)
