"""Characters mod primes: band sums, class counts, interval profiles and exact product mixing."""
from kummerlab.chars.characters import (
    BandSum,
    BurgessRow,
    Character,
    DiscreteLog,
    band_char_sum,
    burgess_profile,
    class_counts,
    complete_counts,
    max_band_ratio,
    primitive_root,
)
from kummerlab.chars.cyclotomic import (
    MixingReport,
    is_zero,
    mixing_from_classes,
    mixing_ratio,
    reduce_cyclotomic,
)

__all__ = [
    "BandSum",
    "BurgessRow",
    "Character",
    "DiscreteLog",
    "band_char_sum",
    "burgess_profile",
    "class_counts",
    "complete_counts",
    "max_band_ratio",
    "primitive_root",
    "MixingReport",
    "is_zero",
    "mixing_from_classes",
    "mixing_ratio",
    "reduce_cyclotomic",
]
