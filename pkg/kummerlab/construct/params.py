"""Construction parameters (M, C, theta) and the theta-choice condition."""
import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


def parse_rational(value: Any, name: str = "value") -> Fraction:
    """Parse "a/b", a decimal string, an int or a Fraction exactly.

    Floats are accepted through their shortest decimal repr, with a warning.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"{name} must be rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"{name} must be finite, got {value!r}")
        logger.warning(f"{name}={value!r} given as float; using {repr(value)} as an exact decimal")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, InvalidOperation) as e:
            raise ValidationError(f"cannot parse {name}={value!r} as a rational: {e}")
    raise ValidationError(f"{name} must be rational, got {type(value).__name__}")


def theta_condition(C: Any, theta: Any) -> Tuple[float, bool]:
    """Left side of C * sum_{j=0}^{floor C} (1/(j+theta) - 1/(j+1)) and whether it is < 2."""
    C = parse_rational(C, "C")
    theta = parse_rational(theta, "theta")
    if C <= 1:
        raise ValidationError(f"C must be > 1, got {C}")
    if not 0 < theta < 1:
        raise ValidationError(f"theta must lie in (0, 1), got {theta}")
    total = C * sum(
        (Fraction(1) / (j + theta) - Fraction(1, j + 1) for j in range(math.floor(C) + 1)),
        Fraction(0),
    )
    return float(total), total < 2


class ConstructionParams(BaseModel):
    """Fix C > 1, put K = floor(C M), and choose theta in (0, 1)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    M: int
    C: Fraction
    theta: Fraction
    t_max: int = 10_000_000

    @field_validator("C", "theta", mode="before")
    @classmethod
    def _parse(cls, value: Any, info) -> Fraction:
        return parse_rational(value, info.field_name)

    @model_validator(mode="after")
    def _check(self) -> "ConstructionParams":
        if self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")
        if self.t_max < 1:
            raise ValueError(f"t_max must be >= 1, got {self.t_max}")
        _, ok = theta_condition(self.C, self.theta)
        if not ok:
            raise ValueError(f"theta condition fails for C={self.C}, theta={self.theta}")
        return self

    @property
    def K(self) -> int:
        return math.floor(self.C * self.M)

    def describe(self) -> dict:
        return {
            "M": self.M,
            "C": str(self.C),
            "theta": str(self.theta),
            "K": self.K,
            "t_max": self.t_max,
        }
