"""Character commands: band sums and product mixing."""
import math
from fractions import Fraction
from typing import Any, List, Optional

from pydantic import Field, field_validator

from kummerlab.arith.primes import primes_in
from kummerlab.chars.characters import Character, band_char_sum, max_band_ratio
from kummerlab.chars.cyclotomic import MixingReport, mixing_from_classes, mixing_ratio
from kummerlab.commands.base import Command, CommandResult, RunConfig, Table, int_list
from kummerlab.construct.params import parse_rational
from kummerlab.utils.exceptions import ValidationError


class CharConfig(RunConfig):
    p: Optional[int] = Field(default=None, ge=2)
    j: int = 1
    M: Optional[int] = Field(default=None, ge=1)
    C: Fraction = Fraction(2)
    format: str = Field(default="json", pattern="^(csv|json)$")

    @field_validator("C", mode="before")
    @classmethod
    def _rational(cls, value: Any) -> Fraction:
        return parse_rational(value, "C")

    def band(self) -> List[int]:
        M = self.M if self.M is not None else self.p // 2
        return [q for q in primes_in(M, math.floor(self.C * M)) if q != self.p]


class CharsumConfig(CharConfig):
    p: int = Field(ge=2)
    ell: int = 1
    scan: bool = False


class CharsumCommand(Command):
    """sum of chi^ell(q) over the band primes, or the worst character with --scan."""

    config_model = CharsumConfig

    def __init__(self):
        super().__init__(name="charsum", description="Character sums over a prime band")

    def execute(self, config: CharsumConfig) -> CommandResult:
        M = config.M if config.M is not None else config.p // 2
        if config.scan:
            ratio, j = max_band_ratio(config.p, M, config.C, config.ell)
            data = {"p": config.p, "M": M, "C": str(config.C), "ell": config.ell,
                    "max_normalized": ratio, "argmax_j": j}
            table = Table(["p", "M", "max_normalized", "argmax_j"], [[config.p, M, ratio, j]])
            return CommandResult(True, f"max |sum|/#band = {ratio:.12g}", data=data, table=table)

        chi = Character.create(config.p, config.j)
        result = band_char_sum(chi, config.ell, M, config.C)
        data = {"p": config.p, "g": chi.g, "j": chi.j, "order": chi.power(config.ell).order,
                "M": M, "C": str(config.C), "ell": config.ell, "real": result.value.real,
                "imag": result.value.imag, "band_size": result.band_size, "normalized": result.normalized}
        table = Table(["p", "j", "ell", "real", "imag", "band_size", "normalized"],
                      [[config.p, chi.j, config.ell, result.value.real, result.value.imag,
                        result.band_size, result.normalized]])
        return CommandResult(True, f"band sum {result.value}", data=data, table=table)


class MixingConfig(CharConfig):
    k: int = Field(ge=1)
    classes: Optional[List[int]] = None

    @field_validator("classes", mode="before")
    @classmethod
    def _classes(cls, value: Any) -> Any:
        return int_list(value)


def mixing_payload(report: MixingReport) -> dict:
    return {
        "V": report.V,
        "d": report.d,
        "k": report.k,
        "n_r": report.n_r,
        "coeff_abs": report.coeff_abs,
        "coefficient": list(report.coefficient),
        "binom_ref": report.binom_ref,
        "ratio": report.ratio,
        "balanced": report.balanced,
        "closed_form": report.closed_form,
        "stirling_reference": report.stirling,
    }


class MixingCommand(Command):
    """|[z^k] prod (1 + z chi(q))| / binom(|V|, k) over a band, or over synthetic classes."""

    config_model = MixingConfig

    def __init__(self):
        super().__init__(name="mixing", description="Exact product-mixing coefficient ratios")

    def execute(self, config: MixingConfig) -> CommandResult:
        if config.classes is not None:
            report = mixing_from_classes(config.classes, config.k)
        elif config.p is not None:
            report = mixing_ratio(config.band(), Character.create(config.p, config.j), config.k)
        else:
            raise ValidationError("mixing needs either --p or --classes")
        data = mixing_payload(report)
        table = Table(["d", "k", "size", "coeff_abs", "binom_ref", "ratio", "closed_form", "stirling_reference"],
                      [[report.d, report.k, sum(report.n_r), report.coeff_abs, report.binom_ref,
                        report.ratio, report.closed_form, report.stirling]])
        return CommandResult(True, f"ratio {report.ratio:.12g}", data=data, table=table)
