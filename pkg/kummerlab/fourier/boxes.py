"""Q_M-twisted heights of box instances, the t_r census and per-prime height histograms."""
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from kummerlab.arith.lcm import c_p, lcm_factored, qm_factored
from kummerlab.arith.primes import primes_in
from kummerlab.config import settings
from kummerlab.construct.local_sets import build_local_sets
from kummerlab.construct.params import ConstructionParams
from kummerlab.fourier.local_dft import local_fourier
from kummerlab.fourier.symmetric import elem_sym
from kummerlab.utils.exceptions import BudgetExceeded, ValidationError, VerificationFailed
from kummerlab.utils.logger import get_logger
from kummerlab.utils.parallel import run_blocks

logger = get_logger(__name__)


def signed_residue(x: int, p: int) -> int:
    """Representative of x mod p in (-p/2, p/2]."""
    x %= p
    return x - p if 2 * x > p else x


@dataclass(frozen=True)
class BoxInstance:
    """(U, A, r): disjoint prime sets and a shift r != 0 coprime to P_U P_A."""

    U: Tuple[int, ...]
    A: Tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "U", tuple(sorted(self.U)))
        object.__setattr__(self, "A", tuple(sorted(self.A)))
        if set(self.U) & set(self.A):
            raise ValidationError("U and A must be disjoint", {"U": self.U, "A": self.A})
        if self.r == 0:
            raise ValidationError("box shift r must be nonzero")
        if math.gcd(self.r, self.P_U * self.P_A) != 1:
            raise ValidationError(f"r={self.r} is not coprime to P_U P_A", {"r": self.r})

    @property
    def P_U(self) -> int:
        return math.prod(self.U)

    @property
    def P_A(self) -> int:
        return math.prod(self.A)

    def rho_U(self) -> int:
        """r P_A^-1 mod P_U."""
        return 0 if self.P_U == 1 else self.r * pow(self.P_A, -1, self.P_U) % self.P_U


def _height_factor(p: int, U_prod: int, A_rest_prod: int, M: int) -> int:
    """Q_M (c_p P_U P_{A-p})^-1 mod p."""
    return qm_factored(M).mod(p) * pow(c_p(M, p) * U_prod * A_rest_prod % p, -1, p) % p


def qm_box_height(p: int, box: BoxInstance, M: int) -> Optional[int]:
    """h_p = r Q_M (c_p P_U P_{A-p})^-1 mod p as a signed representative, None when it vanishes."""
    if p not in box.A:
        raise ValidationError(f"p={p} is not a petal of the box", {"p": p, "A": box.A})
    if p <= M:
        raise ValidationError(f"petal p={p} must exceed M={M}")
    rest = box.P_A // p
    h = box.r * _height_factor(p, box.P_U, rest, M) % p
    # unreduced form: h L_M P_U P_{A-p} = r mod p
    if (h * lcm_factored(M).mod(p) * box.P_U * rest - box.r) % p:
        raise VerificationFailed(f"height at p={p} disagrees with the unreduced form", {"r": box.r})
    return signed_residue(h, p) if h else None


def box_family(
    params: ConstructionParams,
    p: int,
    core: Sequence[int] = (),
    max_petals: int = 2,
    r_bound: int = 10,
) -> List[BoxInstance]:
    """Every box with petal set A containing p, |A| <= max_petals, inside the top band off the core."""
    band = [q for q in primes_in(params.M, params.K) if q not in core]
    if p not in band:
        raise ValidationError(f"p={p} is not a top-band prime outside the core", {"p": p})
    others = [q for q in band if q != p]
    boxes = []
    for size in range(max_petals):
        for extra in combinations(others, size):
            A = tuple(sorted((p,) + extra))
            modulus = math.prod(core) * math.prod(A)
            for r in range(-r_bound, r_bound + 1):
                if r and math.gcd(r, modulus) == 1:
                    boxes.append(BoxInstance(tuple(core), A, r))
    return boxes


@dataclass(frozen=True)
class HistogramRow:
    t: float
    count: int
    ratio: Optional[float]


@dataclass(frozen=True)
class HistogramReport:
    p: int
    H: int
    total: int
    zero_heights: int
    rows: List[HistogramRow]


def height_histogram(p: int, boxes: Sequence[BoxInstance], t_grid: Sequence[float], M: int) -> HistogramReport:
    """N_p(t) = #{boxes : |h_p| <= t} and N_p(t) / ((t/H_p) N_p(H_p)); vanishing heights are left out."""
    H = (p - 1) // 2
    heights = [qm_box_height(p, box, M) for box in boxes]
    nonzero = np.array([abs(h) for h in heights if h is not None], dtype=np.int64)
    full = int(nonzero.size)
    rows = []
    for t in t_grid:
        count = int((nonzero <= t).sum())
        ratio = count / ((t / H) * full) if t > 0 and full else None
        rows.append(HistogramRow(float(t), count, ratio))
    return HistogramReport(p, H, full, len(heights) - full, rows)


@dataclass(frozen=True)
class CensusReport:
    count: float
    instances: int
    e_term: float
    crt_term: float
    cap_constant: int

    @property
    def bound(self) -> float:
        return self.e_term + self.crt_term

    @property
    def ratio(self) -> Optional[float]:
        return self.count / self.bound if self.bound > 0 else None

    @property
    def within_cap(self) -> bool:
        return self.count <= self.cap_constant * self.bound


def _shell(R: int, residue: int, modulus: int) -> np.ndarray:
    """r with R < |r| <= 2R and r = residue mod modulus."""
    pos = np.arange(R + 1, 2 * R + 1, dtype=np.int64)
    r = np.concatenate([-pos[::-1], pos])
    return r[(r - residue) % modulus == 0]


def _census_block(
    petal_sets: Sequence[Tuple[int, ...]],
    U_prod: int,
    xi: int,
    R: int,
    factors: Dict[Tuple[Tuple[int, ...], int], int],
    tables: Dict[int, np.ndarray],
) -> Tuple[List[float], int]:
    sums, instances = [], 0
    for A in petal_sets:
        P_A = math.prod(A)
        r = _shell(R, xi * P_A % U_prod, U_prod)
        r = r[np.gcd(r, U_prod * P_A) == 1]
        weight = np.ones(r.size)
        for q in A:
            H = (q - 1) // 2
            k = factors[(A, q)]
            h = (r % q) * k % q
            h = np.where(2 * h > q, h - q, h)
            weight = weight * tables[q][h + H]
        instances += int(r.size)
        sums.append(math.fsum(weight.tolist()))
    return sums, instances


def t_r_census(
    params: ConstructionParams,
    U: Sequence[int],
    W: Sequence[int],
    a: int,
    R: int,
    xi: int,
    workers: Optional[int] = None,
    max_petals: int = 12,
    max_a: int = 4,
    max_R: int = 10 ** 6,
) -> CensusReport:
    """Weighted count of (A, r), A in W of size a, R < |r| <= 2R, r = xi P_A mod P_U,
    against e_a(L*) + (2R/P_U) e_a(L*/q)."""
    U, W = tuple(sorted(U)), tuple(sorted(W))
    if set(U) & set(W):
        raise ValidationError("core U and petal pool W must be disjoint")
    band = set(primes_in(params.M, params.K))
    if not set(W) <= band:
        raise ValidationError("petal pool must lie in the top band", {"W": W})
    if len(W) > max_petals or a > max_a or R > max_R:
        raise BudgetExceeded("census parameters exceed the tiny-scale limits",
                             {"petals": len(W), "a": a, "R": R})
    if a < 0 or R < 1:
        raise ValidationError("need a >= 0 and R >= 1", {"a": a, "R": R})
    U_prod = math.prod(U)
    cap = settings.CENSUS_CAP_CONSTANT
    if a == 0 or a > len(W):
        empty = 0.0 if a else 1.0
        return CensusReport(0.0, 0, empty, empty * 2 * R / U_prod, cap)

    petal_sets = list(combinations(W, a))
    work = len(petal_sets) * (4 * R // U_prod + 2)
    if work > settings.CENSUS_BUDGET:
        raise BudgetExceeded(f"census needs about {work} shift evaluations", {"work": work})

    local = build_local_sets(params)
    transforms = {q: local_fourier(local[q]) for q in W}
    tables = {q: f.weight_table() for q, f in transforms.items()}
    factors = {(A, q): _height_factor(q, U_prod, math.prod(A) // q, params.M)
               for A in petal_sets for q in A}
    l_star = [transforms[q].l_star() for q in W]

    chunk = max(1, len(petal_sets) // 16)
    blocks = run_blocks(
        _census_block,
        [(petal_sets[i:i + chunk], U_prod, xi, R, factors, tables)
         for i in range(0, len(petal_sets), chunk)],
        workers,
    )
    count = math.fsum(s for sums, _ in blocks for s in sums)
    instances = sum(n for _, n in blocks)
    e_term = elem_sym(l_star, a)
    crt_term = 2 * R / U_prod * elem_sym([w / q for w, q in zip(l_star, W)], a)
    report = CensusReport(count, instances, e_term, crt_term, cap)
    logger.info(f"Census a={a} R={R}: weighted count {count:.6g} vs bound {report.bound:.6g}")
    return report
