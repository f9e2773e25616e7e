"""
Rank-k Perturbation
The perturbator I + U U^T J built from an isotropic basis, its inverse,
kernel and rank-one factorization
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import List

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.isotropic import IsotropicBasis
from symplectic.matcore import (
    Mat,
    SymplecticContext,
    as_mat,
    is_symplectic,
    isotropy_defect,
    norm2,
    numerical_rank,
)

logger = logging.getLogger("symplectic")


@dataclass(frozen=True)
class RankKPerturbation:
    """Isotropic basis U applied with a nonnegative scale, U_eff = scale * U"""

    basis: IsotropicBasis
    scale: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.scale) or self.scale < 0:
            raise SymplecticError("domain", f"scale must be finite and >= 0, got {self.scale}")

    @property
    def ctx(self) -> SymplecticContext:
        return self.basis.ctx

    @property
    def rank(self) -> int:
        return self.basis.k

    @property
    def U_eff(self) -> np.ndarray:
        return self.scale * self.basis.U

    @property
    def is_trivial(self) -> bool:
        return self.scale == 0.0 or self.rank == 0

    def scaled(self, scale: float) -> "RankKPerturbation":
        return RankKPerturbation(self.basis, scale)

    def _update(self) -> np.ndarray:
        U = self.U_eff
        return U @ (U.T @ self.ctx.J)


def perturbator(p: RankKPerturbation) -> Mat:
    """I + U_eff U_eff^T J"""
    return as_mat(np.eye(p.ctx.dim) + p._update(), "perturbator")


def perturbator_inverse(p: RankKPerturbation) -> Mat:
    """I - U_eff U_eff^T J; exact inverse because (U U^T J)^2 = 0"""
    return as_mat(np.eye(p.ctx.dim) - p._update(), "perturbator_inverse")


def perturbator_kernel_dim(p: RankKPerturbation) -> int:
    """
    dim ker(I~ - I) = 2N - rank(U U^T J).

    Equals 2N - k for a nonzero scale, and 2N for the trivial perturbation.
    """
    dim = p.ctx.dim
    if p.is_trivial:
        return dim
    kernel = dim - numerical_rank(p._update(), p.ctx.tol_rank)
    if kernel == 0:
        logger.warning("⚠️ Perturbator has no fixed vectors; 1 is not an eigenvalue")
    return kernel


def apply(p: RankKPerturbation, W: Mat) -> Mat:
    """
    Rank-k perturbation (I + U U^T J) W of a symplectic W.

    The symplectic check on W is relative to ||W||^2.
    """
    ctx = p.ctx
    W = ctx.check_square(W, "W")
    tol = ctx.tol_struct * max(1.0, norm2(W) ** 2)
    ok, defect = is_symplectic(W, ctx, tol=tol)
    if not ok:
        raise SymplecticError("not_symplectic", f"W is not symplectic (defect {defect:.3e})")
    return as_mat(perturbator(p) @ W, "perturbed")


def perturbator_from_columns(U: np.ndarray, ctx: SymplecticContext) -> Mat:
    """
    I + U U^T J for columns that lie in one Lagrangian subspace but need
    not be orthonormal.
    """
    U = np.asarray(U, dtype=np.float64)
    if U.ndim != 2 or U.shape[0] != ctx.dim:
        raise SymplecticError("dimension", f"U has shape {U.shape}, expected ({ctx.dim}, k)")
    iso = isotropy_defect(U, ctx)
    if iso > ctx.tol_struct * max(1.0, norm2(U) ** 2):
        raise SymplecticError("structure", f"columns not isotropic (defect {iso:.3e})")
    return as_mat(np.eye(ctx.dim) + U @ (U.T @ ctx.J), "perturbator")


def factor_rank_one(p: RankKPerturbation) -> List[RankKPerturbation]:
    """Split into k rank-one perturbations, one per column"""
    return [
        RankKPerturbation(IsotropicBasis(p.basis.U[:, [i]], p.ctx), p.scale)
        for i in range(p.rank)
    ]


def factored_perturbator(p: RankKPerturbation) -> Mat:
    """Product of the rank-one perturbators in column order"""
    eye = np.eye(p.ctx.dim)
    return as_mat(reduce(lambda acc, f: acc @ perturbator(f), factor_rank_one(p), eye), "factored")


def factored_inverse(p: RankKPerturbation) -> Mat:
    """Product of the rank-one inverses (I - u_j u_j^T J) in column order"""
    eye = np.eye(p.ctx.dim)
    return as_mat(
        reduce(lambda acc, f: acc @ perturbator_inverse(f), factor_rank_one(p), eye), "factored_inverse"
    )
