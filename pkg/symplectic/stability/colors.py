"""
Eigenvalue Colors
Inside/outside/red/green/mixed classification of a symplectic matrix's
spectrum by the sign of (S0 x, x)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np

from symplectic.matcore import ComplexSpectrum, Mat, SymplecticContext, as_mat, eig, norm2, numerical_rank

logger = logging.getLogger("symplectic")

# unit-circle eigenvalues closer than this form one cluster
CLUSTER_TOL = 1e-5


class EigenColor(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    RED = "red"
    GREEN = "green"
    MIXED = "mixed"


@dataclass(frozen=True)
class ColorEntry:
    eigenvalue: complex
    vector: np.ndarray
    color: EigenColor
    quad: float
    cluster: int = -1


@dataclass(frozen=True)
class UnitCluster:
    """Unit-circle eigenvalues treated as one multiple eigenvalue"""

    members: Tuple[int, ...]
    center: complex
    geometric_multiplicity: int
    color: EigenColor

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def defective(self) -> bool:
        return self.geometric_multiplicity < self.size


@dataclass(frozen=True)
class ColorSpectrum:
    entries: Tuple[ColorEntry, ...]
    clusters: Tuple[UnitCluster, ...]
    s0: Mat
    tol_quad: float
    pairing_defect: float
    spectrum: ComplexSpectrum

    def of_color(self, color: EigenColor) -> List[ColorEntry]:
        return [e for e in self.entries if e.color is color]

    def count(self, color: EigenColor) -> int:
        return len(self.of_color(color))

    def unit_circle(self) -> List[ColorEntry]:
        return [e for e in self.entries if e.color in (EigenColor.RED, EigenColor.GREEN, EigenColor.MIXED)]

    @property
    def has_defective_cluster(self) -> bool:
        return any(c.defective for c in self.clusters)


def s_zero(W: Mat, ctx: SymplecticContext) -> Mat:
    """S0 = (J W + (J W)^T) / 2, exactly symmetric"""
    W = ctx.check_square(W, "W")
    JW = ctx.J @ W
    return as_mat(0.5 * (JW + JW.T), "S0")


def _clusters(values: np.ndarray, indices: List[int]) -> List[List[int]]:
    groups: List[List[int]] = []
    for i in indices:
        for group in groups:
            if min(abs(values[i] - values[g]) for g in group) <= CLUSTER_TOL:
                group.append(i)
                break
        else:
            groups.append([i])
    return groups


def _cluster_color(eigs: np.ndarray, tol_quad: float) -> EigenColor:
    if np.all(eigs > tol_quad):
        return EigenColor.RED
    if np.all(eigs < -tol_quad):
        return EigenColor.GREEN
    return EigenColor.MIXED


def _pairing_defect(values: np.ndarray, off_circle: List[int]) -> float:
    worst = 0.0
    for i in off_circle:
        worst = max(worst, float(np.min(np.abs(values[i] * values - 1.0))))
    return worst


def classify(W: Mat, ctx: SymplecticContext) -> ColorSpectrum:
    """
    Color every eigenvalue of W.

    Off-circle eigenvalues are inside or outside. Unit-circle eigenvalues
    are grouped into clusters; each cluster takes the color given by the
    eigenvalues of X* S0 X on an orthonormal basis X of its eigenspace:
    red if all exceed tol_quad, green if all are below -tol_quad, mixed
    otherwise. tol_quad = 1e-8 ||S0||.
    """
    W = ctx.check_square(W, "W")
    spectrum = eig(W)
    values = spectrum.eigenvalues
    S0 = s_zero(W, ctx)
    tol_quad = 1e-8 * norm2(S0)
    n = ctx.dim

    moduli = np.abs(values)
    inside = [i for i in range(n) if moduli[i] < 1 - ctx.tol_circle]
    outside = [i for i in range(n) if moduli[i] > 1 + ctx.tol_circle]
    on_circle = [i for i in range(n) if i not in inside and i not in outside]

    colors = {i: EigenColor.INSIDE for i in inside}
    colors.update({i: EigenColor.OUTSIDE for i in outside})
    cluster_of = {}
    clusters: List[UnitCluster] = []
    for members in _clusters(values, on_circle):
        center = complex(np.mean(values[members]))
        shifted = np.array(W, dtype=complex) - center * np.eye(n)
        geometric = n - numerical_rank(shifted, CLUSTER_TOL)
        _, _, Vh = np.linalg.svd(shifted)
        basis = Vh.conj().T[:, n - max(1, min(geometric, len(members))):]
        block = basis.conj().T @ S0 @ basis
        color = _cluster_color(np.linalg.eigvalsh(0.5 * (block + block.conj().T)), tol_quad)
        cluster = UnitCluster(tuple(members), center, geometric, color)
        if cluster.defective:
            logger.warning(f"⚠️ Defective unit-circle cluster at {center:.6f} (size {cluster.size}, geometric {geometric})")
        for i in members:
            colors[i] = color
            cluster_of[i] = len(clusters)
        clusters.append(cluster)

    entries = []
    for i in range(n):
        x = spectrum.eigenvectors[:, i]
        quad = complex(x.conj() @ S0 @ x)
        if abs(quad.imag) > 1e-12 * max(1.0, norm2(S0)):
            logger.debug(f"🔍 Quadratic form residue {quad.imag:.2e} at eigenvalue {values[i]:.6f}")
        entries.append(ColorEntry(complex(values[i]), x, colors[i], float(quad.real), cluster_of.get(i, -1)))

    pairing = _pairing_defect(values, inside + outside)
    if pairing > 1e-8:
        logger.warning(f"⚠️ Reciprocal eigenvalue pairing defect {pairing:.2e}")
    return ColorSpectrum(tuple(entries), tuple(clusters), S0, tol_quad, pairing, spectrum)


def delta_s(colors: ColorSpectrum) -> float:
    """
    Smallest distance between a red and a green unit-circle eigenvalue;
    +inf when either color is absent. Mixed eigenvalues are ignored.
    """
    red = [e.eigenvalue for e in colors.of_color(EigenColor.RED)]
    green = [e.eigenvalue for e in colors.of_color(EigenColor.GREEN)]
    if not red or not green:
        return float("inf")
    return float(min(abs(r - g) for r in red for g in green))


def min_gap_any(colors: ColorSpectrum) -> float:
    """Smallest pairwise distance among all unit-circle eigenvalues (+inf below two)"""
    values = [e.eigenvalue for e in colors.unit_circle()]
    if len(values) < 2:
        return float("inf")
    return float(min(abs(values[i] - values[j]) for i in range(len(values)) for j in range(i + 1, len(values))))
