"""
Stability Report
Verdict and table row for one symplectic (monodromy) matrix
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

import numpy as np

from symplectic.matcore import Mat, SymplecticContext

from .averaging import averaged_sequence, is_bounded, relative_change, sequence_norms
from .colors import ColorSpectrum, EigenColor, classify, delta_s, min_gap_any
from .projectors import PROJECTOR_NAMES, ProjectorStats, spectral_projectors

logger = logging.getLogger("symplectic")


class Verdict(Enum):
    STRONGLY_STABLE = "strongly_stable"
    STABLE_NOT_STRONG = "stable_not_strong"
    UNSTABLE = "unstable"


@dataclass
class StabilityReport:
    delta_s: float
    min_gap_any: float
    s_n_norms: List[Tuple[int, float]]
    projector_stats: Dict[str, ProjectorStats]
    decomposition_defect: float
    cross_defect: float
    verdict: Verdict
    total_defect: float = 0.0
    s_r_norm: float = 0.0
    s_g_norm: float = 0.0
    s_n_relative_change: float = 0.0
    s_n_min_eigenvalue: float = 0.0
    pairing_defect: float = 0.0
    color_counts: Dict[str, int] = field(default_factory=dict)
    defective_clusters: int = 0

    @property
    def gap(self) -> float:
        """delta_s when finite, otherwise min_gap_any"""
        return self.delta_s if np.isfinite(self.delta_s) else self.min_gap_any

    @property
    def s_n_final(self) -> float:
        return self.s_n_norms[-1][1]

    def trace(self, name: str) -> float:
        return self.projector_stats[name].trace


def verdict(colors: ColorSpectrum, norms: List[Tuple[int, float]], s_min_eigenvalue: float) -> Verdict:
    """
    unstable: an eigenvalue off the unit circle or a defective unit-circle
    cluster. strongly_stable: everything on the circle, no mixed color and a
    bounded, positive definite S(n). stable_not_strong otherwise.
    """
    off_circle = colors.count(EigenColor.OUTSIDE) + colors.count(EigenColor.INSIDE)
    if off_circle or colors.has_defective_cluster:
        return Verdict.UNSTABLE
    if colors.count(EigenColor.MIXED):
        return Verdict.STABLE_NOT_STRONG
    if is_bounded(norms) and s_min_eigenvalue > 0:
        return Verdict.STRONGLY_STABLE
    return Verdict.STABLE_NOT_STRONG


def analyze(W: Mat, ctx: SymplecticContext, n_max: int = 30) -> StabilityReport:
    """Colors, gaps, averaged sequence, projectors and verdict in one pass"""
    W = ctx.check_square(W, "W")
    colors = classify(W, ctx)
    history = averaged_sequence(W, n_max)
    norms = sequence_norms(history)
    last = history[-1][1]
    s_min = float(np.linalg.eigvalsh(last).min()) if np.all(np.isfinite(last)) else float("nan")
    projections = spectral_projectors(W, ctx, colors)
    result = verdict(colors, norms, s_min)

    report = StabilityReport(
        delta_s=delta_s(colors),
        min_gap_any=min_gap_any(colors),
        s_n_norms=norms,
        projector_stats=projections.stats,
        decomposition_defect=projections.decomposition_defect,
        cross_defect=projections.cross_defect,
        verdict=result,
        total_defect=projections.total_defect,
        s_r_norm=float(np.linalg.norm(projections.s_r, 2)),
        s_g_norm=float(np.linalg.norm(projections.s_g, 2)),
        s_n_relative_change=relative_change(history),
        s_n_min_eigenvalue=s_min,
        pairing_defect=colors.pairing_defect,
        color_counts={c.value: colors.count(c) for c in EigenColor},
        defective_clusters=sum(1 for c in colors.clusters if c.defective),
    )
    logger.info(
        f"🔍 Stability: {result.value}, ||S({n_max})|| = {report.s_n_final:.6g}, gap = {report.gap:.6g}"
    )
    return report


def _finite(value: float) -> Any:
    return float(value) if np.isfinite(value) else "inf"


def report_to_dict(report: StabilityReport) -> Dict[str, Any]:
    """JSON-ready mapping; non-finite numbers become the string "inf" """
    stats = report.projector_stats
    return {
        "delta_s": _finite(report.delta_s),
        "min_gap_any": _finite(report.min_gap_any),
        "s_n_norms": [[n, _finite(v)] for n, v in report.s_n_norms],
        "tr_p0": stats["p0"].trace,
        "tr_pinf": stats["pinf"].trace,
        "tr_pr": stats["pr"].trace,
        "tr_pg": stats["pg"].trace,
        "defects": {
            **{
                name: {
                    "idempotency": stats[name].idempotency_defect,
                    "commutation": stats[name].commutation_defect,
                    "ill_posed": stats[name].ill_posed,
                }
                for name in PROJECTOR_NAMES
            },
            "decomposition": report.decomposition_defect,
            "cross": report.cross_defect,
            "total": report.total_defect,
            "pairing": report.pairing_defect,
        },
        "verdict": report.verdict.value,
    }


def report_to_row(report: StabilityReport) -> Dict[str, Any]:
    """Flat table row; ill-posed or non-finite cells become "-" """

    def cell(value: float, ok: bool = True) -> Any:
        return float(value) if ok and np.isfinite(value) else "-"

    stats = report.projector_stats
    row: Dict[str, Any] = {
        "s_n_norm": cell(report.s_n_final),
        "delta_s": cell(report.delta_s),
        "min_gap_any": cell(report.min_gap_any),
        "gap": cell(report.gap),
    }
    for name in PROJECTOR_NAMES:
        ok = not stats[name].ill_posed
        row[f"tr_{name}"] = cell(round(stats[name].trace, 6), ok)
        row[f"idem_{name}"] = cell(stats[name].idempotency_defect, ok)
    pair_ok = not (stats["pr"].ill_posed or stats["pg"].ill_posed)
    row["decomposition_defect"] = cell(report.decomposition_defect, pair_ok)
    row["cross_defect"] = cell(report.cross_defect, pair_ok)
    row["verdict"] = report.verdict.value
    return row
