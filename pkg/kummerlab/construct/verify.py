"""End-to-end verification of a residue-represented n = t L_M - 1.

Conditions checked, per prime p <= K:

* minus_one_below_alpha: n = -1 mod p^a for a <= alpha_p;
* first_level_above_K: n mod p^beta_p >= K;
* middle_level_strip: at M < q = p^a <= K, n mod q = q - 1 or n mod q >= theta q - 1;

then, for every k <= K, carries only at middle levels q inside one of
k/(j+1) < q < k/(j+theta) + slack, and finally u_k(n) <= n^2.
"""
import math
from fractions import Fraction
from typing import List, Optional

from kummerlab.arith.primes import sieve_primes
from kummerlab.certificate import Certificate, CheckRecord
from kummerlab.config import settings
from kummerlab.construct.local_sets import build_local_sets
from kummerlab.construct.params import ConstructionParams
from kummerlab.kummer.carries import carry_count_residues
from kummerlab.kummer.residues import ResidueSystem
from kummerlab.kummer.split import verify_f_lower
from kummerlab.utils.exceptions import MissingLevels
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


def _residue(rs: ResidueSystem, p: int, a: int) -> int:
    r = rs.residue(p, a)
    if r is None:
        raise MissingLevels(p, f"residue system has no level {p}^{a}")
    return r


def carry_interval(k: int, q: int, theta: Fraction, slack: int) -> Optional[int]:
    """The j with k/(j+1) < q < k/(j+theta) + slack, or None."""
    j = k // q
    # k/(j+1) < q holds by the choice j = floor(k/q)
    if q * (j + theta) < k + slack * (j + theta):
        return j
    return None


def verify_construction(
    rs: ResidueSystem,
    params: ConstructionParams,
    slack: Optional[int] = None,
) -> Certificate:
    slack = settings.INTERVAL_SLACK if slack is None else slack
    M, K, theta = params.M, params.K, params.theta
    local = build_local_sets(params)
    records: List[CheckRecord] = []
    strip_margin = math.inf

    for p, A in local.items():
        for a in range(1, A.alpha + 1):
            q = p ** a
            r = _residue(rs, p, a)
            records.append(CheckRecord(
                condition="minus_one_below_alpha", level=f"{p}^{a}",
                passed=r == q - 1, witness={"p": p, "residue": r, "modulus": q},
            ))
        r = _residue(rs, p, A.beta)
        records.append(CheckRecord(
            condition="first_level_above_K", level=f"{p}^{A.beta}",
            passed=r >= K, witness={"p": p, "residue": r, "K": K},
        ))
        for a in range(A.alpha + 1, A.beta):
            q = p ** a
            r = _residue(rs, p, a)
            in_strip = (r + 1) * theta.denominator >= theta.numerator * q
            if r != q - 1:
                strip_margin = min(strip_margin, (r + 1) / q - float(theta))
            records.append(CheckRecord(
                condition="middle_level_strip", level=f"{p}^{a}",
                passed=r == q - 1 or in_strip,
                witness={"p": p, "residue": r, "modulus": q, "theta": str(theta)},
            ))

    c_floor = math.floor(params.C)
    for k in range(K + 1):
        carries, stray = [], []
        for p in sieve_primes(k):
            profile = carry_count_residues(rs, k, p)
            for a in profile.carry_levels:
                q = p ** a
                j = carry_interval(k, q, theta, slack) if M < q <= K else None
                if j is None or j > c_floor:
                    stray.append(q)
                else:
                    carries.append([q, j])
        records.append(CheckRecord(
            condition="carry_localization", level=f"k={k}",
            passed=not stray,
            witness={"middle_carries": carries, "stray_carries": stray, "slack": slack},
        ))

    lower = verify_f_lower(rs, K)
    records.extend(lower.records)

    cert = Certificate.build(
        "construction",
        records,
        subject={"label": rs.label, **params.describe()},
        margins={
            "strip_margin": None if strip_margin == math.inf else strip_margin,
            **{f"f_lower_{key}": value for key, value in lower.margins.items()},
        },
    )
    logger.info(f"Construction certificate for {params.describe()}: {'pass' if cert.verdict else 'fail'}")
    return cert
