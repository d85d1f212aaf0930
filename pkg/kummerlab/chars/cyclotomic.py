"""Exact coefficient extraction for prod_q (1 + z chi(q)) over Z[zeta_d].

Elements of Z[zeta_d] are integer vectors of length d (polynomials mod x^d - 1);
they are reduced modulo the d-th cyclotomic polynomial only for zero tests and norms.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from kummerlab.chars.characters import Character, class_counts, roots_of_unity
from kummerlab.utils.exceptions import ValidationError

_x = symbols("x")


@lru_cache(maxsize=64)
def cyclotomic_coefficients(d: int) -> Tuple[int, ...]:
    """Phi_d, leading coefficient first."""
    return tuple(int(c) for c in Poly(cyclotomic_poly(d, _x), _x).all_coeffs())


def reduce_cyclotomic(vec: Sequence[int], d: int) -> Tuple[int, ...]:
    """Remainder of sum vec[i] x^i modulo Phi_d, lowest degree first."""
    phi = cyclotomic_coefficients(d)
    deg = len(phi) - 1
    work = [int(c) for c in vec]
    for top in range(len(work) - 1, deg - 1, -1):
        c = work[top]
        if c:
            # Phi_d is monic
            for i, coeff in enumerate(phi):
                work[top - i] -= c * coeff
    return tuple(work[:deg])


def is_zero(vec: Sequence[int], d: int) -> bool:
    return not any(reduce_cyclotomic(vec, d))


def conjugate(vec: Sequence[int], d: int) -> List[int]:
    """x^i -> x^(d-i)."""
    return [int(vec[(-i) % d]) for i in range(d)]


def multiply(a: Sequence[int], b: Sequence[int], d: int) -> List[int]:
    out = [0] * d
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[(i + j) % d] += int(ai) * int(bj)
    return out


def magnitude(vec: Sequence[int], d: int) -> float:
    """|alpha| from the exact norm alpha * conj(alpha), with one square root at the end."""
    norm = reduce_cyclotomic(multiply(vec, conjugate(vec, d), d), d)
    roots = roots_of_unity(d)
    value = math.fsum(c * roots[i].real for i, c in enumerate(norm))
    return math.sqrt(max(value, 0.0)) if any(norm) else 0.0


def product_coefficients(counts: Sequence[int]) -> np.ndarray:
    """prod_r (1 + z zeta^r)^(n_r) as a (|V|+1, d) object array of exact integers."""
    d = len(counts)
    size = sum(counts)
    coeffs = np.zeros((size + 1, d), dtype=object)
    coeffs[0, 0] = 1
    degree = 0
    for r, n in enumerate(counts):
        for _ in range(n):
            shifted = np.roll(coeffs[:degree + 1], r, axis=1)
            coeffs[1:degree + 2] = coeffs[1:degree + 2] + shifted
            degree += 1
    return coeffs


def stirling_reference(size: int, d: int, k: int) -> float:
    """exp(-(1 - 1/d) m log(|V|/m)) with m = min(k, |V| - k)."""
    m = min(k, size - k)
    if m == 0:
        return 1.0
    return math.exp(-(1 - 1 / d) * m * math.log(size / m))


@dataclass
class MixingReport:
    V: Optional[List[int]]
    d: int
    k: int
    coeff_abs: float
    binom_ref: int
    ratio: float
    balanced: bool
    n_r: List[int]
    coefficient: Tuple[int, ...] = field(default_factory=tuple)
    closed_form: Optional[int] = None
    stirling: float = 1.0

    @property
    def vanishes(self) -> bool:
        return not any(self.coefficient)


def mixing_from_classes(n_r: Sequence[int], k: int, V: Optional[List[int]] = None) -> MixingReport:
    """[z^k] prod_r (1 + z zeta_d^r)^(n_r) against binom(|V|, k)."""
    d, size = len(n_r), sum(n_r)
    if d < 1:
        raise ValidationError("need at least one residue class")
    if not 1 <= k <= size - 1:
        raise ValidationError(f"degree k={k} outside [1, {size - 1}]", {"k": k, "size": size})
    coeffs = product_coefficients(n_r)
    raw = [int(c) for c in coeffs[k]]
    reduced = reduce_cyclotomic(raw, d)
    coeff_abs = magnitude(raw, d)
    binom = math.comb(size, k)
    balanced = all(n == n_r[0] for n in n_r)
    closed = None
    if balanced:
        closed = math.comb(size // d, k // d) if k % d == 0 else 0
    return MixingReport(
        V=V,
        d=d,
        k=k,
        coeff_abs=coeff_abs,
        binom_ref=binom,
        ratio=coeff_abs / binom,
        balanced=balanced,
        n_r=list(n_r),
        coefficient=reduced,
        closed_form=closed,
        stirling=stirling_reference(size, d, k),
    )


def mixing_ratio(V: Sequence[int], chi: Character, k: int) -> MixingReport:
    """|[z^k] prod_{q in V} (1 + z chi(q))| / binom(|V|, k), exactly in Z[zeta_d]."""
    return mixing_from_classes(class_counts(V, chi), k, list(V))
