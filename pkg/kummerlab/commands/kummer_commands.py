"""Commands on f(n) itself: single values, tables and the M_K seed."""
import math
from typing import Optional

from pydantic import Field

from kummerlab.commands.base import Command, CommandResult, RunConfig, Table
from kummerlab.construct.seeds import apssv_seed
from kummerlab.kummer.split import f_exact, verify_f_lower
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)

# constant of the known polylogarithmic upper bound f(n) <= c (log n)^2
APSSV_CONSTANT = 24 / (math.pi ** 2 - 6)


class FConfig(RunConfig):
    n: int = Field(ge=1)
    k_max: Optional[int] = Field(default=None, ge=0)


class FCommand(Command):
    """Print f(n) or "none"."""

    config_model = FConfig
    positional = ("n",)

    def __init__(self):
        super().__init__(name="f", description="Least k with u_k(n) > n^2")

    def execute(self, config: FConfig) -> CommandResult:
        value = f_exact(config.n, config.k_max)
        text = "none" if value is None else str(value)
        return CommandResult(True, f"f({config.n}) = {text}", data={"n": config.n, "f": value}, text=text)


class TableConfig(RunConfig):
    n_max: int = Field(alias="max", ge=1)
    n_min: int = Field(default=1, alias="min", ge=1)


def table_row(n: int):
    f = f_exact(n)
    log_n = math.log(n)
    if f is None or n == 1:
        return [n, "none" if f is None else f, None, None, None]
    return [n, f, f / log_n, f / log_n ** 2, f / (APSSV_CONSTANT * log_n ** 2)]


class TableCommand(Command):
    """Rows (n, f(n), f/log n, f/(log n)^2, f/(c (log n)^2))."""

    config_model = TableConfig

    def __init__(self):
        super().__init__(name="table", description="Tabulate f(n) with normalised ratios")

    def execute(self, config: TableConfig) -> CommandResult:
        if config.n_min > config.n_max:
            raise ValidationError(f"empty range {config.n_min}..{config.n_max}")
        table = Table(["n", "f", "f_over_log_n", "f_over_log_n_squared", "f_over_c_log_n_squared"])
        for n in range(config.n_min, config.n_max + 1):
            table.append(table_row(n))
        logger.info(f"Tabulated f(n) for {config.n_min} <= n <= {config.n_max}")
        return CommandResult(
            True,
            f"{len(table.rows)} rows",
            data={"constant": APSSV_CONSTANT, "header": table.header, "rows": table.rows},
            table=table,
        )


class SeedConfig(RunConfig):
    K: int = Field(ge=2)
    format: str = Field(default="json", pattern="^(csv|json)$")


class SeedApssvCommand(Command):
    """M_K and the certificate f(M_K - 1) > K."""

    config_model = SeedConfig

    def __init__(self):
        super().__init__(name="seed-apssv", description="Build M_K and certify f(M_K - 1) > K")

    def execute(self, config: SeedConfig) -> CommandResult:
        seed = apssv_seed(config.K)
        value = seed.to_integer()
        cert = verify_f_lower(value - 1, config.K)
        table = Table(["K", "seed", "verdict", "max_k", "min_margin"])
        table.append([config.K, value, cert.verdict, cert.margins["max_k"], cert.margins["min_margin"]])
        return CommandResult(
            cert.verdict,
            f"M_{config.K} = {value}",
            data={"K": config.K, "seed": value, "factors": seed.to_json(), "certificate": cert.to_dict()},
            table=table,
        )
