"""Fourier-side commands: criterion sums, boxes, denominators, assembly and Buchstab scans."""
import random
from fractions import Fraction
from typing import Any, List, Optional

from pydantic import Field, field_validator, model_validator

from kummerlab.arith.primes import primes_in
from kummerlab.commands.base import Command, CommandResult, ConstructionConfig, RunConfig, Table, int_list
from kummerlab.construct.local_sets import build_local_sets
from kummerlab.construct.params import parse_rational
from kummerlab.fourier.boxes import box_family, height_histogram, t_r_census
from kummerlab.fourier.buchstab import buchstab_scan
from kummerlab.fourier.criterion import criterion_partial_sum
from kummerlab.fourier.local_dft import local_fourier
from kummerlab.fourier.modes import exact_denominator, random_freq_vector
from kummerlab.fourier.symmetric import pivot_identity
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)

SEED_BITS = 64


class FourierConfig(ConstructionConfig):
    s: int = Field(default=1, alias="shell", ge=0)
    h_cap: int = Field(default=1, ge=1)
    N: Optional[int] = Field(default=None, ge=1)
    R: Optional[int] = Field(default=None, ge=1)
    count_cap: Optional[int] = Field(default=None, ge=1)


class FourierCommand(Command):
    """One CSV row per enumerated mode; totals and local transform checks in JSON."""

    config_model = FourierConfig

    def __init__(self):
        super().__init__(name="fourier", description="Partial sums of the Fourier criterion")

    def execute(self, config: FourierConfig) -> CommandResult:
        params = config.params()
        report = criterion_partial_sum(
            params, N=config.N, s=config.s, h_cap=config.h_cap,
            count_cap=config.count_cap, R=config.R, workers=config.workers, keep_modes=True,
        )
        table = Table(["support", "heights", "weight", "distance", "term", "low_denominator"])
        for mode in report.modes:
            table.append([mode.support, mode.heights, mode.weight, mode.distance, mode.term, mode.low_denominator])

        local = build_local_sets(params)
        transforms = {}
        for p in primes_in(params.M, params.K):
            f = local_fourier(local[p])
            transforms[str(p)] = {
                "size": f.size,
                "m": f.m,
                "l_star": f.l_star(),
                "l1_mass": f.l1_mass(),
                "parseval_error": f.parseval_error(),
                "harmonic_constant": f.harmonic_constant(),
            }
        data = {
            "params": params.describe(),
            "N": report.N,
            "R": report.R,
            "s": report.s,
            "h_cap": report.h_cap,
            "value": report.value,
            "count": report.count,
            "truncated": report.truncated,
            "low_denominator_count": report.low_denominator_count,
            "low_denominator_value": report.low_denominator_value,
            "transforms": transforms,
        }
        return CommandResult(True, f"criterion partial sum {report.value:.12g}", data=data, table=table)


class BoxesConfig(ConstructionConfig):
    census: bool = False
    histogram: bool = False
    core: List[int] = Field(default_factory=list)
    petals: List[int] = Field(default_factory=list)
    a: int = Field(default=1, ge=0)
    R: int = Field(default=10, ge=1)
    xi: int = 1
    p: Optional[int] = None
    max_petals: int = Field(default=2, ge=1)
    r_bound: int = Field(default=10, ge=1)
    grid: int = Field(default=20, ge=2)

    @field_validator("core", "petals", mode="before")
    @classmethod
    def _lists(cls, value: Any) -> Any:
        return int_list(value)

    @model_validator(mode="after")
    def _one_mode(self) -> "BoxesConfig":
        if self.census == self.histogram:
            raise ValueError("choose exactly one of --census and --histogram")
        if self.histogram and self.p is None:
            raise ValueError("--histogram needs --p")
        return self


class BoxesCommand(Command):
    """T_R census against its bound, or the N_p(t) height histogram."""

    config_model = BoxesConfig

    def __init__(self):
        super().__init__(name="boxes", description="Q_M-box census and height histograms")

    def execute(self, config: BoxesConfig) -> CommandResult:
        params = config.params()
        if config.census:
            return self._census(config, params)
        return self._histogram(config, params)

    def _census(self, config: BoxesConfig, params) -> CommandResult:
        petals = config.petals or [q for q in primes_in(params.M, params.K) if q not in config.core][:12]
        report = t_r_census(params, config.core, petals, config.a, config.R, config.xi, config.workers)
        header = ["a", "R", "count", "instances", "e_term", "crt_term", "bound", "ratio", "within_cap"]
        row = [config.a, config.R, report.count, report.instances, report.e_term, report.crt_term,
               report.bound, report.ratio, report.within_cap]
        if not report.within_cap:
            logger.warning(f"census exceeds {report.cap_constant} times its bound (ratio {report.ratio})")
        data = dict(zip(header, row), core=config.core, petals=petals, xi=config.xi,
                    cap_constant=report.cap_constant)
        return CommandResult(True, "census complete", data=data, table=Table(header, [row]))

    def _histogram(self, config: BoxesConfig, params) -> CommandResult:
        p = config.p
        boxes = box_family(params, p, config.core, config.max_petals, config.r_bound)
        H = (p - 1) // 2
        grid = [H * i / (config.grid - 1) for i in range(config.grid)]
        report = height_histogram(p, boxes, grid, params.M)
        table = Table(["t", "count", "ratio"], [[r.t, r.count, r.ratio] for r in report.rows])
        data = {
            "p": p,
            "H": report.H,
            "boxes": len(boxes),
            "nonzero": report.total,
            "zero_heights": report.zero_heights,
            "rows": [dict(zip(table.header, row)) for row in table.rows],
        }
        return CommandResult(True, f"{len(boxes)} boxes at p={p}", data=data, table=table)


class SeededConfig(RunConfig):
    seed: int = Field(default=0, ge=0, lt=2 ** SEED_BITS)
    count: int = Field(default=100, ge=1)
    format: str = Field(default="json", pattern="^(csv|json)$")


class DenominatorsConfig(ConstructionConfig):
    seed: int = Field(default=0, ge=0, lt=2 ** SEED_BITS)
    count: int = Field(default=1000, ge=1)
    max_support: int = Field(default=4, ge=1)
    format: str = Field(default="json", pattern="^(csv|json)$")


class DenominatorsCommand(Command):
    """Exact denominator law on seeded random modes."""

    config_model = DenominatorsConfig

    def __init__(self):
        super().__init__(name="denominators", description="Check q(a) on random frequency vectors")

    def execute(self, config: DenominatorsConfig) -> CommandResult:
        params = config.params()
        rng = random.Random(config.seed)
        table = Table(["index", "support", "q", "distance", "lower_bound_holds"], comments={"seed": config.seed})
        failures = 0
        for i in range(config.count):
            a = random_freq_vector(params, rng, config.max_support)
            report = exact_denominator(a)
            failures += not report.lower_bound_holds
            table.append([i, sorted(a.support), report.q, report.distance, report.lower_bound_holds])
        data = {"seed": config.seed, "count": config.count, "params": params.describe(), "failures": failures}
        return CommandResult(failures == 0, f"{config.count} modes, {failures} failures", data=data, table=table)


class AssemblyConfig(SeededConfig):
    length: int = Field(default=30, ge=1)
    k: int = Field(default=5, ge=1)
    reciprocal: bool = False
    tolerance: float = Field(default=1e-12, gt=0)


def assembly_weights(rng: random.Random, length: int, reciprocal: bool) -> List[float]:
    """Uniform weights in [0, 1), or lambda/q over random primes q when ``reciprocal``."""
    if not reciprocal:
        return [rng.random() for _ in range(length)]
    primes = primes_in(10, 10 + 40 * length)
    return [rng.random() / q for q in sorted(rng.sample(primes, length))]


class AssemblyCommand(Command):
    """sum_p w_p e_{k-1}(w without p) = k e_k(w) on seeded random weights."""

    config_model = AssemblyConfig

    def __init__(self):
        super().__init__(name="assembly", description="Check the symmetric-function pivot identity")

    def execute(self, config: AssemblyConfig) -> CommandResult:
        if config.k > config.length:
            raise ValidationError(f"k={config.k} exceeds the weight count {config.length}")
        rng = random.Random(config.seed)
        table = Table(["index", "lhs", "rhs", "relative_error"], comments={"seed": config.seed})
        worst = 0.0
        for i in range(config.count):
            lhs, rhs = pivot_identity(assembly_weights(rng, config.length, config.reciprocal), config.k)
            error = abs(lhs - rhs) / abs(rhs) if rhs else abs(lhs)
            worst = max(worst, error)
            table.append([i, lhs, rhs, error])
        passed = worst <= config.tolerance
        data = {"seed": config.seed, "count": config.count, "k": config.k,
                "max_relative_error": worst, "passed": passed}
        return CommandResult(passed, f"max relative error {worst:.3g}", data=data, table=table)


class BuchstabConfig(RunConfig):
    limit: int = Field(ge=1)
    M: int = Field(ge=1)
    C: Fraction = Fraction(2)
    format: str = Field(default="json", pattern="^(csv|json)$")

    @field_validator("C", mode="before")
    @classmethod
    def _rational(cls, value: Any) -> Fraction:
        return parse_rational(value, "C")


class BuchstabCommand(Command):
    """Exhaustive band identity over squarefree n <= limit."""

    config_model = BuchstabConfig

    def __init__(self):
        super().__init__(name="buchstab", description="Scan the finite Buchstab identity")

    def execute(self, config: BuchstabConfig) -> CommandResult:
        scan = buchstab_scan(config.limit, config.M, config.C)
        data = {"limit": scan.limit, "M": config.M, "C": str(config.C), "checked": scan.checked,
                "failures": scan.failures[:100], "failure_count": len(scan.failures)}
        table = Table(["limit", "checked", "failure_count"], [[scan.limit, scan.checked, len(scan.failures)]])
        return CommandResult(scan.passed, f"{scan.checked} squarefree n checked", data=data, table=table)
