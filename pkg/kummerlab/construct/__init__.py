"""Lower constructions: the M_K seed and the multiplier seed n_M = t L_M - 1."""
from kummerlab.construct.local_sets import (
    DensityReport,
    LocalSet,
    build_local_set,
    build_local_sets,
    density,
    local_set_contains,
    local_set_size,
)
from kummerlab.construct.params import ConstructionParams, parse_rational, theta_condition
from kummerlab.construct.search import SearchOutcome, multiplier_search
from kummerlab.construct.seeds import LevelPolicy, apssv_seed, assemble_n, materialize
from kummerlab.construct.verify import verify_construction

__all__ = [
    "DensityReport",
    "LocalSet",
    "build_local_set",
    "build_local_sets",
    "density",
    "local_set_contains",
    "local_set_size",
    "ConstructionParams",
    "parse_rational",
    "theta_condition",
    "SearchOutcome",
    "multiplier_search",
    "LevelPolicy",
    "apssv_seed",
    "assemble_n",
    "materialize",
    "verify_construction",
]
