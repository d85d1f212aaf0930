"""The two lower-construction seeds: M_K and n_M = t L_M - 1."""
import math
from dataclasses import dataclass
from typing import Dict, Optional

import mpmath

from kummerlab.arith.factored import FactoredNat, PrimePower
from kummerlab.arith.lcm import chebyshev_psi, lcm_factored
from kummerlab.arith.primes import floor_log, sieve_primes
from kummerlab.config import settings
from kummerlab.construct.local_sets import build_local_sets
from kummerlab.construct.params import ConstructionParams
from kummerlab.kummer.residues import ResidueSystem
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


def apssv_seed(K: int) -> FactoredNat:
    """M_K = prod over p <= K of p^(floor(log_p K) + 1)."""
    if K < 2:
        raise ValidationError(f"K must be >= 2, got {K}", {"K": K})
    return FactoredNat(tuple((p, floor_log(p, K) + 1) for p in sieve_primes(K)))


@dataclass(frozen=True)
class LevelPolicy:
    """Which levels assemble_n stores.

    Every p <= K gets levels 1..beta_p. If the residue at p^beta_p does not
    certify carry termination for k <= K, up to ``extra_levels`` further
    levels are added until it does.
    """

    extra_levels: int = settings.EXTRA_LEVELS


def seed_bits(t: int, params: ConstructionParams) -> float:
    return math.log2(t) + lcm_factored(params.M).bit_length_bound()


def materialize(t: int, params: ConstructionParams) -> Optional[int]:
    """t L_M - 1 as an integer, or None when it exceeds MATERIALIZE_BITS."""
    if seed_bits(t, params) > settings.MATERIALIZE_BITS:
        return None
    return t * lcm_factored(params.M).to_integer() - 1


def assemble_n(t: int, params: ConstructionParams, level_policy: Optional[LevelPolicy] = None) -> ResidueSystem:
    """Residues of n = t L_M - 1 at p^a for p <= K, a <= beta_p (plus early-stop levels)."""
    if t < 1:
        raise ValidationError(f"t must be >= 1, got {t}", {"t": t})
    policy = level_policy or LevelPolicy()
    L = lcm_factored(params.M)
    K = params.K

    entries: Dict[PrimePower, int] = {}
    for p, A in build_local_sets(params).items():
        top = A.beta
        while True:
            q = p ** top
            r = (t % q * L.mod(q) - 1) % q
            if r >= K or top >= A.beta + policy.extra_levels:
                break
            top += 1
        if r < K:
            logger.warning(f"p={p}: termination not certified within {policy.extra_levels} extra levels")
        for a in range(1, top + 1):
            entries[PrimePower(p, a)] = r % p ** a

    n = materialize(t, params)
    if n is not None:
        with mpmath.workprec(settings.LOG_PRECISION_BITS):
            log_value = float(mpmath.log(n))
        note = "exact"
    else:
        # log(t L_M - 1) = log t + psi(M) + log(1 - 1/(t L_M)), |correction| < 2^(1 - bits)
        log_value = math.log(t) + chebyshev_psi(params.M)
        note = f"correction below 2^-{int(seed_bits(t, params)) - 1}"
    label = f"n=t*L_M-1 t={t} M={params.M} C={params.C} theta={params.theta} log:{note}"
    return ResidueSystem(entries, log_value, label)
