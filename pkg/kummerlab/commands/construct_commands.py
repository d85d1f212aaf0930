"""Commands for the multiplier construction: construct, verify and density."""
import json
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import Field

from kummerlab.certificate import Certificate
from kummerlab.commands.base import Command, CommandResult, ConstructionConfig, RunConfig, Table
from kummerlab.config import settings
from kummerlab.construct.local_sets import DensityReport, density
from kummerlab.construct.params import ConstructionParams
from kummerlab.construct.search import multiplier_search
from kummerlab.construct.seeds import LevelPolicy, assemble_n, materialize
from kummerlab.construct.verify import verify_construction
from kummerlab.kummer.split import f_exact, verify_f_lower
from kummerlab.utils.exceptions import ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)

DENSITY_HEADER = ["p", "band", "alpha", "beta", "m", "size", "ratio", "prefix_levels", "log_contribution"]


def density_payload(report: DensityReport) -> Dict[str, Any]:
    return {
        "log_delta_inv": report.log_delta_inv,
        "prediction": report.prediction,
        "top_band_share": report.top_band_share,
        "small_prime_share": report.small_prime_share,
        "rows": [dict(zip(DENSITY_HEADER, _density_row(r))) for r in report.rows],
    }


def _density_row(r):
    return [r.p, r.band, r.alpha, r.beta, r.m, r.size, r.ratio, r.prefix_levels, r.log_contribution]


def construct(params: ConstructionParams, workers: Optional[int] = None,
              level_policy: Optional[LevelPolicy] = None) -> Dict[str, Any]:
    """Search, assemble, verify and (when small enough) cross-check against f_exact."""
    outcome = multiplier_search(params, workers)
    data: Dict[str, Any] = {
        "params": params.describe(),
        "t": outcome.t,
        "density": density_payload(density(params)),
    }
    if not outcome.found:
        data["acceptance"] = {str(p): ratio for p, ratio in outcome.acceptance.items()}
        data["certificate"] = None
        return data

    rs_policy = level_policy or LevelPolicy()
    rs = assemble_n(outcome.t, params, rs_policy)
    cert = verify_construction(rs, params)
    cert.subject["t"] = outcome.t
    cert.subject["extra_levels"] = rs_policy.extra_levels
    data["residues"] = rs.to_json()
    data["certificate"] = cert.to_dict()

    n = materialize(outcome.t, params)
    if n is not None:
        exact = verify_f_lower(n, params.K)
        f_value = f_exact(n, params.K)
        data["exact_check"] = {
            "bits": n.bit_length(),
            "certificate_verdict": exact.verdict,
            "f_above_K": f_value is None,
            "agrees": exact.verdict == cert.verdict == (f_value is None),
        }
    return data


class ConstructConfig(ConstructionConfig):
    t_max: int = Field(default=10_000_000, ge=1)
    extra_levels: int = Field(default=settings.EXTRA_LEVELS, ge=0)
    format: str = Field(default="json", pattern="^(csv|json)$")


class ConstructCommand(Command):
    """Least multiplier t, density table and certificate for n = t L_M - 1."""

    config_model = ConstructConfig

    def __init__(self):
        super().__init__(name="construct", description="Run the multiplier construction end to end")

    def execute(self, config: ConstructConfig) -> CommandResult:
        params = config.params(config.t_max)
        data = construct(params, config.workers, LevelPolicy(config.extra_levels))
        if data["t"] is None:
            return CommandResult(True, f"no multiplier t <= {config.t_max}", data=data)
        passed = data["certificate"]["verdict"] and data.get("exact_check", {}).get("agrees", True)
        return CommandResult(passed, f"t = {data['t']}", data=data)


class VerifyConfig(RunConfig):
    cert: str
    format: str = Field(default="json", pattern="^(csv|json)$")


def rederive(cert: Certificate) -> Optional[Certificate]:
    """Recompute the certificate from its subject, when the subject allows it."""
    subject = cert.subject
    if cert.kind == "construction" and {"t", "M", "C", "theta"} <= subject.keys():
        params = ConstructionParams(M=subject["M"], C=subject["C"], theta=subject["theta"])
        policy = LevelPolicy(int(subject.get("extra_levels", settings.EXTRA_LEVELS)))
        fresh = verify_construction(assemble_n(int(subject["t"]), params, policy), params)
        fresh.subject["t"] = subject["t"]
        fresh.subject["extra_levels"] = policy.extra_levels
        return fresh
    if cert.kind == "f_lower" and isinstance(subject.get("n"), int) and "K" in subject:
        return verify_f_lower(subject["n"], subject["K"])
    return None


class VerifyCommand(Command):
    """Read a certificate, check its verdict, and re-derive it when possible."""

    config_model = VerifyConfig

    def __init__(self):
        super().__init__(name="verify", description="Check a JSON certificate")

    def execute(self, config: VerifyConfig) -> CommandResult:
        try:
            raw = json.loads(Path(config.cert).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read certificate {config.cert}: {e}")
        if isinstance(raw, dict) and "records" not in raw and isinstance(raw.get("certificate"), dict):
            raw = raw["certificate"]
        cert = Certificate.model_validate(raw)

        fresh = rederive(cert)
        matches = None
        if fresh is not None:
            stored = Certificate.model_validate(json.loads(cert.to_json()))
            recomputed = Certificate.model_validate(json.loads(fresh.to_json()))
            matches = stored.verdict == recomputed.verdict and stored.records == recomputed.records
        failure = cert.first_failure()
        data = {
            "kind": cert.kind,
            "records": len(cert.records),
            "verdict": cert.verdict,
            "consistent": cert.consistent(),
            "rederived": fresh is not None,
            "matches": matches,
            "first_failure": failure.model_dump(mode="json") if failure else None,
        }
        passed = cert.verdict and cert.consistent() and matches is not False
        logger.info(f"Certificate {config.cert}: {'pass' if passed else 'fail'}")
        return CommandResult(passed, "certificate verified" if passed else "certificate rejected", data=data)


class DensityConfig(ConstructionConfig):
    pass


class DensityCommand(Command):
    """Per-prime |A_p|, m_p and log(m_p/|A_p|), with the top/small split."""

    config_model = DensityConfig

    def __init__(self):
        super().__init__(name="density", description="Density of the local sets")

    def execute(self, config: DensityConfig) -> CommandResult:
        report = density(config.params())
        table = Table(DENSITY_HEADER, [_density_row(r) for r in report.rows])
        return CommandResult(True, f"log 1/delta = {report.log_delta_inv:.12g}",
                             data=density_payload(report), table=table)
