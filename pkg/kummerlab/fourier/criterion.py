"""Truncated partial sums of the mode-by-mode Fourier criterion over the top band."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from kummerlab.arith.lcm import lcm_factored
from kummerlab.arith.primes import primes_in
from kummerlab.construct.local_sets import build_local_sets, density
from kummerlab.construct.params import ConstructionParams
from kummerlab.fourier.local_dft import local_fourier
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger
from kummerlab.utils.parallel import run_blocks

logger = get_logger(__name__)

Support = Tuple[int, ...]

_SUPPORTS_PER_BLOCK = 64


@dataclass(frozen=True)
class ModeTerm:
    support: Support
    heights: Tuple[int, ...]
    weight: float
    distance: Fraction
    term: float
    low_denominator: bool


@dataclass
class CriterionReport:
    value: float
    N: int
    s: int
    h_cap: int
    count: int
    truncated: bool
    R: Optional[int] = None
    low_denominator_count: int = 0
    low_denominator_value: float = 0.0
    modes: List[ModeTerm] = field(default_factory=list)


def signed_heights(H: int) -> List[int]:
    """-H..-1 then 1..H."""
    return [h for h in range(-H, H + 1) if h]


def _block_terms(
    entries: Sequence[Tuple[Support, Optional[int]]],
    residues: Dict[int, int],
    weights: Dict[int, Dict[int, float]],
    h_cap: int,
    N: int,
    R: Optional[int],
) -> List[ModeTerm]:
    """Terms for each (support, limit) in lexicographic height order."""
    terms: List[ModeTerm] = []
    for S, limit in entries:
        P = math.prod(S)
        cofactors = [P // p for p in S]
        ranges = [signed_heights(min(h_cap, (p - 1) // 2)) for p in S]
        # top-band prefix modes have q(a) = P
        low = R is not None and P * P * R <= N * N
        for i, hs in enumerate(product(*ranges)):
            if limit is not None and i >= limit:
                break
            num = sum(h * residues[p] * c for h, p, c in zip(hs, S, cofactors)) % P
            distance = Fraction(min(num, P - num), P)
            weight = math.prod(weights[p][h] for p, h in zip(S, hs))
            scaled = N * distance
            term = weight if scaled <= 1 else weight / float(scaled)
            terms.append(ModeTerm(S, hs, weight, distance, term, low))
    return terms


def criterion_partial_sum(
    params: ConstructionParams,
    N: Optional[int] = None,
    s: int = 1,
    h_cap: int = 1,
    count_cap: Optional[int] = None,
    R: Optional[int] = None,
    workers: Optional[int] = None,
    keep_modes: bool = False,
) -> CriterionReport:
    """Sum over |supp a| = s, 0 < |h_p| <= h_cap of prod w_p(h_p) min(1, 1/(N ||Phi(a)||)).

    With ``R`` and no ``N``, N = ceil(delta^-1 R); modes with q(a) <= N/sqrt(R)
    are counted separately.
    """
    if s < 0 or h_cap < 1:
        raise ValidationError("need shell size s >= 0 and height cap >= 1", {"s": s, "h_cap": h_cap})
    if N is None:
        if R is None:
            raise ValidationError("either N or R is required")
        N = math.ceil(math.exp(density(params).log_delta_inv) * R)
    if N < 1:
        raise ValidationError(f"N must be positive, got {N}")

    band = primes_in(params.M, params.K)
    if s == 0 or s > len(band):
        # no support of that size: the empty sum
        logger.info(f"Criterion shell s={s} is empty ({len(band)} top-band primes)")
        return CriterionReport(value=0.0, N=N, s=s, h_cap=h_cap, count=0, truncated=False, R=R)
    local = build_local_sets(params)
    L = lcm_factored(params.M)
    residues = {p: L.mod(p) for p in band}
    weights = {p: local_fourier(local[p]).prefix_weights() for p in band}

    # fix the truncation point before dispatch so the sum is worker-independent
    entries: List[Tuple[Support, Optional[int]]] = []
    total, truncated = 0, False
    for S in combinations(band, s):
        size = math.prod(2 * min(h_cap, (p - 1) // 2) for p in S)
        if count_cap is not None and total + size > count_cap:
            if count_cap > total:
                entries.append((S, count_cap - total))
            truncated = True
            break
        entries.append((S, None))
        total += size

    blocks = run_blocks(
        _block_terms,
        [(entries[i:i + _SUPPORTS_PER_BLOCK], residues, weights, h_cap, N, R)
         for i in range(0, len(entries), _SUPPORTS_PER_BLOCK)],
        workers,
    )
    terms = [t for block in blocks for t in block]
    value = math.fsum(t.term for t in terms)
    low = [t.term for t in terms if t.low_denominator]
    logger.info(f"Criterion shell s={s} h_cap={h_cap} N={N}: {len(terms)} modes, sum={value:.6g}")
    return CriterionReport(
        value=value,
        N=N,
        s=s,
        h_cap=h_cap,
        count=len(terms),
        truncated=truncated,
        R=R,
        low_denominator_count=len(low),
        low_denominator_value=math.fsum(low),
        modes=terms if keep_modes else [],
    )
