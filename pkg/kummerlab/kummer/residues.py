"""Integers known only through their residues at a set of prime powers."""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple

from kummerlab.arith.factored import PrimePower
from kummerlab.utils.exceptions import ValidationError


@dataclass(frozen=True)
class ResidueSystem:
    """Residues of one (possibly enormous) integer at declared prime powers.

    Coherence: when p^a and p^b (a < b) are both present the entry at p^b
    reduces to the entry at p^a.
    """

    entries: Mapping[PrimePower, int]
    log_value: Optional[float] = None
    label: str = ""
    _top: Dict[int, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        top: Dict[int, int] = {}
        for q, r in self.entries.items():
            if not 0 <= r < q.value():
                raise ValidationError(f"residue {r} out of range at {q}", {"level": str(q)})
            top[q.p] = max(top.get(q.p, 0), q.a)
        for q, r in self.entries.items():
            high = PrimePower(q.p, top[q.p])
            if self.entries[high] % q.value() != r:
                raise ValidationError(
                    f"incoherent residues at {q} and {high}", {"p": q.p, "a": q.a, "b": high.a}
                )
        if self.log_value is not None and self.log_value < 0:
            raise ValidationError("log_value must be >= 0")
        object.__setattr__(self, "_top", top)

    @classmethod
    def from_integer(
        cls,
        n: int,
        levels: Mapping[int, int],
        label: str = "",
        with_log: bool = True,
    ) -> "ResidueSystem":
        """Residues of an explicit n at p^1..p^levels[p] for every listed prime."""
        entries = {}
        for p, top in levels.items():
            for a in range(1, top + 1):
                q = PrimePower(p, a)
                entries[q] = n % q.value()
        log_value = math.log(n) if with_log and n >= 1 else None
        return cls(entries, log_value, label)

    def max_level(self, p: int) -> int:
        """Highest exponent a with a stored (or derivable) residue at p^a."""
        return self._top.get(p, 0)

    def residue(self, p: int, a: int) -> Optional[int]:
        """n mod p^a, derived from the highest stored level of p when possible."""
        top = self._top.get(p, 0)
        if a > top:
            return None
        return self.entries[PrimePower(p, top)] % p ** a

    def levels(self) -> Iterable[Tuple[PrimePower, int]]:
        return sorted(self.entries.items())

    def to_json(self) -> Dict[str, object]:
        return {
            "label": self.label,
            "log_value": self.log_value,
            "entries": {str(q): r for q, r in self.levels()},
        }
