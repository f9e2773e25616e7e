"""
Strong Stability
Eigenvalue colors, averaged matrices, spectral projectors and verdicts
"""

from .colors import (
    ColorEntry,
    ColorSpectrum,
    EigenColor,
    UnitCluster,
    classify,
    delta_s,
    min_gap_any,
    s_zero,
)
from .averaging import averaged_sequence, is_bounded, relative_change, sequence_norms
from .projectors import ProjectorStats, SpectralProjectors, spectral_projectors
from .report import StabilityReport, Verdict, analyze, report_to_dict, report_to_row, verdict

__all__ = [
    "ColorEntry",
    "ColorSpectrum",
    "EigenColor",
    "UnitCluster",
    "classify",
    "delta_s",
    "min_gap_any",
    "s_zero",
    "averaged_sequence",
    "is_bounded",
    "relative_change",
    "sequence_norms",
    "ProjectorStats",
    "SpectralProjectors",
    "spectral_projectors",
    "StabilityReport",
    "Verdict",
    "analyze",
    "report_to_dict",
    "report_to_row",
    "verdict",
]
