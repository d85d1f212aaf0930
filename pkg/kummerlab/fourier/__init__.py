"""Fourier-side diagnostics: exact denominators, local transforms, criterion sums and box heights."""
from kummerlab.fourier.boxes import (
    BoxInstance,
    CensusReport,
    HistogramReport,
    box_family,
    height_histogram,
    qm_box_height,
    signed_residue,
    t_r_census,
)
from kummerlab.fourier.buchstab import BuchstabScan, buchstab_check, buchstab_scan
from kummerlab.fourier.criterion import CriterionReport, criterion_partial_sum
from kummerlab.fourier.local_dft import LocalFourier, local_fourier
from kummerlab.fourier.modes import (
    DenominatorReport,
    FreqVector,
    exact_denominator,
    phi,
    random_freq_vector,
)
from kummerlab.fourier.symmetric import elem_sym, pivot_identity

__all__ = [
    "BoxInstance",
    "CensusReport",
    "HistogramReport",
    "box_family",
    "height_histogram",
    "qm_box_height",
    "signed_residue",
    "t_r_census",
    "BuchstabScan",
    "buchstab_check",
    "buchstab_scan",
    "CriterionReport",
    "criterion_partial_sum",
    "LocalFourier",
    "local_fourier",
    "DenominatorReport",
    "FreqVector",
    "exact_denominator",
    "phi",
    "random_freq_vector",
    "elem_sym",
    "pivot_identity",
]
