"""
Spectral Projectors
Inside/outside/red/green projectors from eigenvector grouping
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from symplectic import settings
from symplectic.errors import SymplecticError
from symplectic.matcore import Mat, SymplecticContext, norm2, solve_with_condition

from .colors import ColorSpectrum, EigenColor, classify

logger = logging.getLogger("symplectic")

PROJECTOR_NAMES = ("p0", "pinf", "pr", "pg")
_GROUPS = {
    "p0": EigenColor.INSIDE,
    "pinf": EigenColor.OUTSIDE,
    "pr": EigenColor.RED,
    "pg": EigenColor.GREEN,
}


@dataclass(frozen=True)
class ProjectorStats:
    trace: float
    idempotency_defect: float
    commutation_defect: float
    ill_posed: bool = False


@dataclass
class SpectralProjectors:
    projectors: Dict[str, np.ndarray]
    stats: Dict[str, ProjectorStats]
    s_r: np.ndarray
    s_g: np.ndarray
    cross: np.ndarray
    decomposition_defect: float
    cross_defect: float
    total_defect: float
    eigvec_condition: float
    notes: List[str] = field(default_factory=list)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.projectors[name]


def spectral_projectors(W: Mat, ctx: SymplecticContext, colors: Optional[ColorSpectrum] = None) -> SpectralProjectors:
    """
    P0, Pinf, Pr, Pg as sums of V[:, g] V^{-1}[g, :] over the eigenvalues of
    each group, realified.

    The P0/Pinf pair is flagged ill-posed when an eigenvalue sits in the
    band (tol_circle, 10 tol_circle] around the unit circle; Pr/Pg when a
    mixed eigenvalue or a defective unit-circle cluster is present. Both
    are flagged when the eigenvector matrix is numerically singular.
    """
    W = ctx.check_square(W, "W")
    colors = colors if colors is not None else classify(W, ctx)
    n = ctx.dim
    V = colors.spectrum.eigenvectors
    notes: List[str] = []

    try:
        V_inv, cond = solve_with_condition(V, np.eye(n, dtype=complex))
    except SymplecticError as e:
        logger.warning(f"⚠️ Eigenvector matrix is singular: {e}")
        V_inv, cond = np.linalg.pinv(V), float("inf")
    singular_basis = cond > settings.COND_WARN
    if singular_basis:
        notes.append("eigenvector matrix ill-conditioned")

    moduli = np.abs(colors.spectrum.eigenvalues)
    band = np.abs(moduli - 1.0)
    near_circle = bool(np.any((band > ctx.tol_circle) & (band <= 10 * ctx.tol_circle)))
    has_mixed = colors.count(EigenColor.MIXED) > 0 or colors.has_defective_cluster
    ill_posed = {
        "p0": near_circle or singular_basis,
        "pinf": near_circle or singular_basis,
        "pr": has_mixed or singular_basis,
        "pg": has_mixed or singular_basis,
    }

    projectors: Dict[str, np.ndarray] = {}
    stats: Dict[str, ProjectorStats] = {}
    for name in PROJECTOR_NAMES:
        group = [i for i, e in enumerate(colors.entries) if e.color is _GROUPS[name]]
        if group:
            P = V[:, group] @ V_inv[group, :]
        else:
            P = np.zeros((n, n), dtype=complex)
        residue = float(np.max(np.abs(P.imag))) if P.size else 0.0
        if residue > 1e-10 * max(1.0, norm2(P.real)):
            notes.append(f"{name} has imaginary residue {residue:.2e}")
            ill_posed[name] = True
        P = np.real(P)
        projectors[name] = P
        stats[name] = ProjectorStats(
            trace=float(np.trace(P)),
            idempotency_defect=norm2(P @ P - P),
            commutation_defect=norm2(W @ P - P @ W),
            ill_posed=ill_posed[name],
        )
        if ill_posed[name]:
            logger.warning(f"⚠️ Projector {name} is ill-posed")

    S0 = np.array(colors.s0)
    Pr, Pg = projectors["pr"], projectors["pg"]
    eye = np.eye(n)
    cross = Pr.T @ S0 @ Pg
    return SpectralProjectors(
        projectors=projectors,
        stats=stats,
        s_r=Pr.T @ S0 @ Pr,
        s_g=Pg.T @ S0 @ Pg,
        cross=cross,
        decomposition_defect=norm2(Pr + Pg - eye),
        cross_defect=norm2(cross),
        total_defect=norm2(sum(projectors.values()) - eye),
        eigvec_condition=cond,
        notes=notes,
    )
