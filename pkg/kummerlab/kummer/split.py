"""The smooth/rough split binom(n, k) = u_k(n) v_k(n) and the least k with u_k(n) > n^2."""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Union

import mpmath

from kummerlab.arith.factored import FactoredNat
from kummerlab.arith.primes import factor_small, sieve_primes, smallest_prime_factors
from kummerlab.certificate import Certificate, CheckRecord
from kummerlab.config import settings
from kummerlab.kummer.carries import carry_count, carry_count_residues
from kummerlab.kummer.residues import ResidueSystem
from kummerlab.utils.exceptions import MissingLogValue, ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)

IntegerLike = Union[int, ResidueSystem]

# Incremental f_exact needs a least-prime-factor table up to n.
SPF_LIMIT = 2_000_000
# Float margin outside of which the incremental log sum decides on its own.
FLOAT_GUARD = 1e-6


@dataclass(frozen=True)
class SmoothSplit:
    n: int
    k: int
    u: FactoredNat
    v: FactoredNat


def _check_nk(n: int, k: int) -> None:
    if k < 0 or k > n:
        raise ValidationError(f"need 0 <= k <= n, got n={n}, k={k}", {"n": n, "k": k})


def uv_split(n: int, k: int) -> SmoothSplit:
    """Factor binom(n, k) through carry counts and split it at k."""
    _check_nk(n, k)
    u, v = {}, {}
    for p in sieve_primes(n):
        c = carry_count(n, k, p).count
        if c:
            (u if p <= k else v)[p] = c
    return SmoothSplit(n, k, FactoredNat.from_map(u), FactoredNat.from_map(v))


def smooth_valuations(n: IntegerLike, k: int, level_cap: Optional[int] = None) -> Dict[int, int]:
    """{p: v_p(binom(n, k))} over primes p <= k."""
    out = {}
    for p in sieve_primes(k):
        if isinstance(n, ResidueSystem):
            c = carry_count_residues(n, k, p, level_cap).count
        else:
            c = carry_count(n, k, p, level_cap).count
        if c:
            out[p] = c
    return out


def log_u(n: IntegerLike, k: int, level_cap: Optional[int] = None) -> float:
    """log u_k(n) = sum over p <= k of v_p(binom(n, k)) log p."""
    if not isinstance(n, ResidueSystem):
        _check_nk(n, k)
    vals = smooth_valuations(n, k, level_cap)
    return math.fsum(c * math.log(p) for p, c in vals.items())


def _exceeds_square(vals: Dict[int, int], n: int, approx: Optional[float] = None) -> bool:
    """Is prod p^vals[p] > n^2? Exact whenever the decision is close."""
    target = 2 * math.log(n)
    if approx is None:
        approx = math.fsum(c * math.log(p) for p, c in vals.items())
    if abs(approx - target) > FLOAT_GUARD:
        return approx > target
    if approx / math.log(2) <= settings.EXACT_COMPARE_BITS:
        return math.prod(p ** c for p, c in vals.items()) > n * n
    with mpmath.workprec(settings.LOG_PRECISION_BITS):
        diff = mpmath.fsum(c * mpmath.log(p) for p, c in vals.items()) - 2 * mpmath.log(n)
        if abs(diff) > mpmath.mpf("1e-9"):
            return diff > 0
    return math.prod(p ** c for p, c in vals.items()) > n * n


def _f_incremental(n: int, k_max: int) -> Optional[int]:
    # v_p(binom(n,k)) = v_p(binom(n,k-1)) + v_p(n-k+1) - v_p(k)
    spf = smallest_prime_factors(max(n, 2))
    vals: Dict[int, int] = {}
    s = 0.0
    for k in range(1, k_max + 1):
        if spf[k] == k:
            s += vals.get(k, 0) * math.log(k)
        for p, e in factor_small(n - k + 1, spf):
            vals[p] = vals.get(p, 0) + e
            if p <= k:
                s += e * math.log(p)
        for p, e in factor_small(k, spf):
            vals[p] -= e
            s -= e * math.log(p)
        if s < 2 * math.log(n) - FLOAT_GUARD:
            continue
        smooth = {p: c for p, c in vals.items() if p <= k and c}
        if _exceeds_square(smooth, n, s):
            return k
    return None


def f_exact(n: int, k_max: Optional[int] = None) -> Optional[int]:
    """Least 0 <= k <= k_max with u_k(n) > n^2, or None when there is none."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}", {"n": n})
    k_max = n if k_max is None else min(k_max, n)
    if n <= SPF_LIMIT:
        result = _f_incremental(n, k_max)
    else:
        result = None
        for k in range(1, k_max + 1):
            if _exceeds_square(smooth_valuations(n, k), n):
                result = k
                break
    logger.debug(f"f({n}) with k_max={k_max}: {result}")
    return result


def _log_n(n: IntegerLike) -> float:
    if isinstance(n, ResidueSystem):
        if n.log_value is None:
            raise MissingLogValue("residue system has no log_value")
        return n.log_value
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    return math.log(n)


def verify_f_lower(n: IntegerLike, K: int, level_cap: Optional[int] = None) -> Certificate:
    """Certificate that u_k(n) <= n^2 for every 0 <= k <= K, i.e. f(n) > K."""
    if K < 0:
        raise ValidationError(f"K must be >= 0, got {K}")
    log_n2 = 2 * _log_n(n)
    explicit = not isinstance(n, ResidueSystem)
    if explicit:
        _check_nk(n, K)

    records: List[CheckRecord] = []
    worst_k, worst_margin = 0, log_n2
    for k in range(K + 1):
        vals = smooth_valuations(n, k, level_cap)
        lu = math.fsum(c * math.log(p) for p, c in vals.items())
        if explicit:
            ok = not _exceeds_square(vals, n, lu)
        else:
            ok = lu <= log_n2
        margin = log_n2 - lu
        if margin < worst_margin:
            worst_k, worst_margin = k, margin
        records.append(CheckRecord(
            condition="smooth_part_at_most_square",
            level=f"k={k}",
            passed=ok,
            witness={"log_u": lu, "log_n_squared": log_n2, "margin": margin},
        ))

    cert = Certificate.build(
        "f_lower",
        records,
        subject={"K": K, "n": n if explicit else n.label},
        margins={"max_k": worst_k, "min_margin": worst_margin},
    )
    failed = cert.first_failure()
    if failed is not None:
        cert.margins["first_violation"] = failed.level
        logger.info(f"f lower bound fails at {failed.level}")
    return cert
