"""Normalised Fourier coefficients of the local indicators 1_{A_p} over Z/m_p Z."""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict

import numpy as np

from kummerlab.config import settings
from kummerlab.construct.local_sets import LocalSet
from kummerlab.utils.exceptions import BudgetExceeded, ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)

# elements of A per direct-transform chunk times m stays below this
_CHUNK_CELLS = 1 << 22


def dft_direct(indicator: np.ndarray) -> np.ndarray:
    """sum_{y in A} e(-a y / m) for every a, summed over A in chunks."""
    m = indicator.size
    roots = np.exp(-2j * np.pi * np.arange(m) / m)
    elements = np.flatnonzero(indicator)
    freqs = np.arange(m, dtype=np.int64)
    out = np.zeros(m, dtype=np.complex128)
    step = max(1, _CHUNK_CELLS // max(m, 1))
    for i in range(0, elements.size, step):
        ys = elements[i:i + step]
        out += roots[np.outer(freqs, ys) % m].sum(axis=1)
    return out


def dft_fast(indicator: np.ndarray) -> np.ndarray:
    return np.fft.fft(indicator.astype(np.float64))


@dataclass(frozen=True)
class LocalFourier:
    """Coefficients of 1_A normalised by the density |A|/m, so frequency 0 has value 1."""

    A: LocalSet
    size: int
    coefficients: np.ndarray
    method: str

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def density(self) -> Fraction:
        return Fraction(self.size, self.m)

    @property
    def H(self) -> int:
        """Signed height range (p - 1) / 2."""
        return (self.A.p - 1) // 2

    def coefficient(self, a: int) -> complex:
        return complex(self.coefficients[a % self.m])

    def prefix_weight(self, h: int) -> float:
        """w_p(h) = |1^_A(h m/p)| / (|A|/m)."""
        if h == 0:
            raise ValidationError("prefix weights are defined for h != 0")
        return float(abs(self.coefficients[(h * (self.m // self.A.p)) % self.m]))

    def prefix_weights(self) -> Dict[int, float]:
        return {h: self.prefix_weight(h) for h in range(-self.H, self.H + 1) if h}

    def weight_table(self) -> np.ndarray:
        """w_p(h) indexed by h + H for -H <= h <= H (the h = 0 slot holds 0)."""
        table = np.zeros(2 * self.H + 1)
        for h, w in self.prefix_weights().items():
            table[h + self.H] = w
        return table

    def l_star(self) -> float:
        """L_p^* = sum over 0 < |h| <= H_p of w_p(h)."""
        return math.fsum(self.prefix_weights().values())

    def l1_mass(self) -> float:
        return math.fsum(np.abs(self.coefficients).tolist())

    def parseval_error(self) -> float:
        """Relative error of sum |c_a|^2 = m/|A|."""
        expected = self.m / self.size
        return abs(math.fsum((np.abs(self.coefficients) ** 2).tolist()) - expected) / expected

    def harmonic_constant(self) -> float:
        """max over 0 < |h| <= H of |h| w_p(h)."""
        return max((abs(h) * w for h, w in self.prefix_weights().items()), default=0.0)


@lru_cache(maxsize=256)
def local_fourier(A: LocalSet, method: str = "auto") -> LocalFourier:
    """Full transform of 1_{A_p}; direct below DFT_DIRECT_LIMIT, FFT above."""
    if A.m > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded(f"m_p={A.m} exceeds the enumeration budget", {"p": A.p, "m": A.m})
    if method == "auto":
        method = "direct" if A.m <= settings.DFT_DIRECT_LIMIT else "fft"
    if method not in ("direct", "fft"):
        raise ValidationError(f"unknown transform method {method!r}")
    indicator = A.mask()
    size = int(indicator.sum())
    raw = dft_direct(indicator) if method == "direct" else dft_fast(indicator)
    coefficients = raw / size
    coefficients[0] = 1.0
    coefficients.setflags(write=False)
    logger.debug(f"Local transform p={A.p} m={A.m} |A|={size} via {method}")
    return LocalFourier(A, size, coefficients, method)
