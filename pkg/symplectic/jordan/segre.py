"""
Segre Characteristics
Jordan block sizes at an eigenvalue from the rank staircase of (A - lambda I)^j
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.matcore import eig, norm2, rank_with_margin

logger = logging.getLogger("symplectic")

# eigenvalues closer than this are treated as one multiple eigenvalue
EIGEN_CLUSTER_TOL = 1e-4


@dataclass(frozen=True)
class SegreCharacteristic:
    """Blocks (size, multiplicity) at one eigenvalue, sizes strictly descending"""

    eigenvalue: complex
    sizes: Tuple[Tuple[int, int], ...] = ()
    borderline: bool = False

    def __post_init__(self):
        sizes = tuple((int(n), int(l)) for n, l in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        block_sizes = [n for n, _ in sizes]
        if any(n < 1 or l < 1 for n, l in sizes):
            raise SymplecticError("domain", f"block sizes and multiplicities must be positive: {sizes}")
        if any(a <= b for a, b in zip(block_sizes, block_sizes[1:])):
            raise SymplecticError("domain", f"block sizes must be strictly descending: {sizes}")

    @classmethod
    def from_blocks(cls, eigenvalue: complex, blocks: List[int], borderline: bool = False) -> "SegreCharacteristic":
        counts = Counter(b for b in blocks if b > 0)
        return cls(eigenvalue, tuple(sorted(counts.items(), reverse=True)), borderline)

    @property
    def algebraic_multiplicity(self) -> int:
        return sum(n * l for n, l in self.sizes)

    @property
    def geometric_multiplicity(self) -> int:
        return sum(l for _, l in self.sizes)

    @property
    def is_empty(self) -> bool:
        return not self.sizes

    def blocks(self) -> List[int]:
        return [n for n, l in self.sizes for _ in range(l)]

    def to_dict(self) -> Dict[str, Any]:
        value = complex(self.eigenvalue)
        return {
            "lambda": value.real if value.imag == 0 else [value.real, value.imag],
            "sizes": [list(s) for s in self.sizes],
            "borderline": self.borderline,
        }


def weyr_to_segre(weyr: List[int]) -> List[Tuple[int, int]]:
    """Conjugate partition: w_s - w_{s+1} blocks of size s"""
    padded = list(weyr) + [0]
    sizes = []
    for s in range(len(weyr), 0, -1):
        count = padded[s - 1] - padded[s]
        if count > 0:
            sizes.append((s, count))
    return sizes


def segre_at(A: np.ndarray, lam: complex, tol_rank: float) -> SegreCharacteristic:
    """
    Segre characteristic of A at lambda.

    Ranks r_j of (A - lambda I)^j are taken relative to ||A - lambda I||^j
    until they stabilize; Weyr numbers w_j = r_{j-1} - r_j are converted to
    block sizes. An empty result means lambda is not an eigenvalue.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SymplecticError("dimension", f"segre_at needs a square matrix, got {A.shape}")
    n = A.shape[0]
    lam = complex(lam)
    dtype = float if lam.imag == 0 else complex
    shifted = np.array(A, dtype=dtype) - (lam.real if dtype is float else lam) * np.eye(n)
    base = max(norm2(shifted), np.finfo(float).tiny)

    ranks = [n]
    borderline = False
    power = np.eye(n, dtype=dtype)
    for j in range(1, n + 1):
        power = power @ shifted
        rank, near = rank_with_margin(power, tol_rank, scale=base ** j)
        borderline = borderline or near
        ranks.append(rank)
        if rank == ranks[-2]:
            break

    weyr = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    weyr = [w for w in weyr if w > 0]
    if any(a < b for a, b in zip(weyr, weyr[1:])):
        borderline = True
        weyr = [min(weyr[:i + 1]) for i in range(len(weyr))]
    if borderline:
        logger.warning(f"⚠️ Borderline rank decision at lambda={lam:.6g}")
    return SegreCharacteristic(lam if lam.imag else lam.real, tuple(weyr_to_segre(weyr)), borderline)


def spectrum_structure(A: np.ndarray, tol_rank: float) -> List[SegreCharacteristic]:
    """Segre characteristic at every eigenvalue cluster of A"""
    values = eig(np.asarray(A, dtype=np.float64)).eigenvalues
    groups: List[List[complex]] = []
    for value in values:
        for group in groups:
            if min(abs(value - g) for g in group) <= EIGEN_CLUSTER_TOL:
                group.append(value)
                break
        else:
            groups.append([value])

    structure = []
    for group in groups:
        center = complex(np.mean(group))
        if abs(center.imag) <= 1e-14 * max(1.0, abs(center)):
            center = complex(center.real, 0.0)
        segre = segre_at(A, center, tol_rank)
        if segre.algebraic_multiplicity == len(group) or len(group) == 1:
            structure.append(segre)
            continue
        # near-coincident simple eigenvalues, not a Jordan block
        logger.debug(
            f"🔍 Cluster at {center:.6g}: {len(group)} eigenvalues, Segre mass {segre.algebraic_multiplicity}"
        )
        structure.extend(segre_at(A, value, tol_rank) for value in group)
    return structure


def total_multiplicity(structure: List[SegreCharacteristic]) -> int:
    return sum(s.algebraic_multiplicity for s in structure)
