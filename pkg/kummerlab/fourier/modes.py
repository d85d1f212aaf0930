"""Frequency vectors, Phi(a) and the exact denominator q(a)."""
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping

from sympy import multiplicity

from kummerlab.arith.factored import nearest_int_distance
from kummerlab.arith.lcm import lcm_factored
from kummerlab.construct.local_sets import build_local_sets
from kummerlab.construct.params import ConstructionParams
from kummerlab.utils.exceptions import ValidationError, VerificationFailed


@dataclass(frozen=True)
class FreqVector:
    """A sparse mode a = (a_p), a_p in Z/m_p Z, stored by least nonnegative representatives."""

    support: Mapping[int, int]
    context: ConstructionParams

    @classmethod
    def create(cls, entries: Mapping[int, int], params: ConstructionParams) -> "FreqVector":
        local = build_local_sets(params)
        support: Dict[int, int] = {}
        for p, a in sorted(entries.items()):
            if p not in local:
                raise ValidationError(f"p={p} is not a prime <= K={params.K}", {"p": p})
            a %= local[p].m
            if a:
                support[p] = a
        return cls(support, params)

    def is_zero(self) -> bool:
        return not self.support


def _require_nonzero(a: FreqVector) -> None:
    if a.is_zero():
        raise ValidationError("frequency vector must be nonzero")


def phi(a: FreqVector) -> Fraction:
    """Phi(a) = sum_p a_p L_M / p^beta_p, exactly."""
    _require_nonzero(a)
    L = lcm_factored(a.context.M).to_integer()
    local = build_local_sets(a.context)
    return sum((Fraction(a_p * L, p ** local[p].beta) for p, a_p in a.support.items()), Fraction(0))


def denominator_formula(a: FreqVector) -> int:
    """prod over the support of p^(B_p - v_p(a_p))."""
    _require_nonzero(a)
    local = build_local_sets(a.context)
    return math.prod(p ** (local[p].B - multiplicity(p, a_p)) for p, a_p in a.support.items())


@dataclass(frozen=True)
class DenominatorReport:
    q: int
    value: Fraction
    distance: Fraction
    lower_bound_holds: bool


def exact_denominator(a: FreqVector) -> DenominatorReport:
    """q(a), checked against the reduced denominator of Phi(a), and ||Phi(a)|| >= 1/q(a)."""
    value = phi(a)
    q = denominator_formula(a)
    if q != value.denominator:
        raise VerificationFailed(
            f"denominator formula {q} differs from reduced denominator {value.denominator}",
            {"support": {str(p): v for p, v in a.support.items()}},
        )
    distance = nearest_int_distance(value)
    return DenominatorReport(q, value, distance, distance >= Fraction(1, q))


def random_freq_vector(params: ConstructionParams, rng: random.Random, max_support: int = 4) -> FreqVector:
    """A nonzero mode with a random support of size 1..max_support."""
    local = build_local_sets(params)
    primes = sorted(local)
    size = rng.randint(1, min(max_support, len(primes)))
    chosen = sorted(rng.sample(primes, size))
    return FreqVector.create({p: rng.randrange(1, local[p].m) for p in chosen}, params)
