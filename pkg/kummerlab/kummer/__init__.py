"""Carry counting, the u_k/v_k split and exact computation of f(n)."""
from kummerlab.kummer.carries import CarryProfile, carry_count, carry_count_residues
from kummerlab.kummer.residues import ResidueSystem
from kummerlab.kummer.split import SmoothSplit, f_exact, log_u, uv_split, verify_f_lower

__all__ = [
    "CarryProfile",
    "carry_count",
    "carry_count_residues",
    "ResidueSystem",
    "SmoothSplit",
    "f_exact",
    "log_u",
    "uv_split",
    "verify_f_lower",
]
