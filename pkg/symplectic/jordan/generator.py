"""
Structured Test Matrices
Symplectic matrices with a prescribed Jordan structure
"""

import logging
from typing import Dict, List, Optional

import numpy as np
import scipy.linalg

from symplectic.errors import SymplecticError
from symplectic.isotropic import random_orthogonal_symplectic
from symplectic.matcore import Mat, SymplecticContext, as_mat, canonical_frame, is_symplectic

from .segre import SegreCharacteristic

logger = logging.getLogger("symplectic")


def jordan_block(n: int, lam: float) -> np.ndarray:
    """n x n upper Jordan block with real eigenvalue lam"""
    if n < 1:
        raise SymplecticError("domain", f"block size must be >= 1, got {n}")
    if isinstance(lam, complex):
        if lam.imag != 0:
            raise SymplecticError("structure_unrealizable", "only real eigenvalues have real Jordan blocks")
        lam = lam.real
    return float(lam) * np.eye(n) + np.eye(n, k=1)


def _is_unimodular(lam: float) -> bool:
    return abs(lam - 1.0) < 1e-12 or abs(lam + 1.0) < 1e-12


def _half_blocks(structure: List[SegreCharacteristic]) -> List[np.ndarray]:
    """Jordan blocks of B in W = diag(B, B^{-T})"""
    by_value: Dict[float, SegreCharacteristic] = {}
    for segre in structure:
        lam = complex(segre.eigenvalue)
        if lam.imag != 0:
            raise SymplecticError("structure_unrealizable", f"complex eigenvalue {lam} is not supported")
        if lam.real == 0:
            raise SymplecticError("structure_unrealizable", "symplectic matrices are invertible")
        key = round(lam.real, 12)
        if key in by_value:
            raise SymplecticError("structure_unrealizable", f"eigenvalue {lam.real} listed twice")
        by_value[key] = segre

    blocks: List[np.ndarray] = []
    done = set()
    for key, segre in sorted(by_value.items()):
        if key in done:
            continue
        lam = float(key)
        if _is_unimodular(lam):
            for n, l in segre.sizes:
                if l % 2:
                    raise SymplecticError(
                        "structure_unrealizable",
                        f"blocks of size {n} at {lam:g} need even multiplicity, got {l}",
                    )
                blocks.extend(jordan_block(n, lam) for _ in range(l // 2))
            done.add(key)
            continue
        partner_key = round(1.0 / lam, 12)
        partner = by_value.get(partner_key)
        if partner is not None and partner.sizes != segre.sizes:
            raise SymplecticError(
                "structure_unrealizable",
                f"blocks at {lam:g} and {1 / lam:g} must have equal sizes",
            )
        blocks.extend(jordan_block(n, lam) for n, l in segre.sizes for _ in range(l))
        done.update({key, partner_key})
    return blocks


def half_dimension(structure: List[SegreCharacteristic]) -> int:
    """N such that the structure fills a 2N x 2N symplectic matrix"""
    return sum(b.shape[0] for b in _half_blocks(structure))


def symplectic_with_structure(
    structure: List[SegreCharacteristic],
    ctx: SymplecticContext,
    rng: Optional[np.random.Generator] = None,
) -> Mat:
    """
    Symplectic W = diag(B, B^{-T}) with B assembled from Jordan blocks.

    An eigenvalue off {1, -1} brings its reciprocal partner along (listing
    the partner is optional but its sizes must agree). At 1 and -1 blocks
    come in pairs, so every multiplicity there must be even. A generator
    conjugates the result by a random orthogonal symplectic matrix.

    Raises:
        SymplecticError: structure_unrealizable
    """
    blocks = _half_blocks(structure)
    order = sum(b.shape[0] for b in blocks)
    if order != ctx.n_half:
        raise SymplecticError(
            "structure_unrealizable",
            f"structure fills {order} of the N={ctx.n_half} half-dimension",
        )
    B = scipy.linalg.block_diag(*blocks)
    W = scipy.linalg.block_diag(B, np.linalg.inv(B).T)

    T = canonical_frame(ctx)
    W = T @ W @ T.T
    if rng is not None:
        Q = random_orthogonal_symplectic(ctx, rng)
        W = Q.T @ W @ Q

    ok, defect = is_symplectic(W, ctx, tol=max(ctx.tol_struct, 1e-12 * np.linalg.norm(W, 2) ** 2))
    if not ok:
        raise SymplecticError("structure", f"generated matrix is not symplectic (defect {defect:.3e})")
    return as_mat(W, "W")
