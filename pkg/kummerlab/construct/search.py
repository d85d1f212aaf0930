"""Exhaustive search for the least multiplier t with t u_p mod m_p in A_p for all p <= K."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from kummerlab.config import settings
from kummerlab.construct.local_sets import build_local_sets
from kummerlab.construct.params import ConstructionParams
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger
from kummerlab.utils.parallel import block_ranges, first_hit

logger = get_logger(__name__)

Condition = Tuple[int, int, np.ndarray]


@dataclass
class SearchOutcome:
    t: Optional[int]
    t_max: int
    acceptance: Dict[int, float] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.t is not None


def _conditions(params: ConstructionParams) -> List[Condition]:
    """(m_p, u_p mod m_p, membership mask), most restrictive prime first."""
    local = build_local_sets(params)
    conds = [(A.m, A.u_p_residue, A.mask()) for A in local.values()]
    order = sorted(range(len(conds)), key=lambda i: (conds[i][2].mean(), i))
    return [conds[i] for i in order]


def _scan_block(lo: int, hi: int, conds: List[Condition]) -> Optional[int]:
    t = np.arange(lo, hi, dtype=np.int64)
    for m, u, mask in conds:
        t = t[mask[(t * u) % m]]
        if t.size == 0:
            return None
    return int(t[0])


def multiplier_search(params: ConstructionParams, workers: Optional[int] = None) -> SearchOutcome:
    """Least 1 <= t <= t_max passing every local condition, or t=None."""
    conds = _conditions(params)
    largest_m = max((m for m, _, _ in conds), default=1)
    if params.t_max * largest_m >= 2 ** 62:
        raise ValidationError(f"t_max={params.t_max} too large for 64-bit residue products")
    acceptance = {p: float(A.mask().mean()) for p, A in build_local_sets(params).items()}

    blocks = block_ranges(1, params.t_max + 1, settings.SEARCH_BLOCK_SIZE)
    logger.info(f"Scanning t <= {params.t_max} in {len(blocks)} blocks for {params.describe()}")
    t = first_hit(_scan_block, [(lo, hi, conds) for lo, hi in blocks], workers)

    if t is None:
        worst = sorted(acceptance.items(), key=lambda kv: kv[1])[:5]
        logger.info(f"No multiplier up to {params.t_max}; most restrictive primes: {worst}")
    else:
        logger.info(f"Least multiplier t={t}")
    return SearchOutcome(t, params.t_max, acceptance)
