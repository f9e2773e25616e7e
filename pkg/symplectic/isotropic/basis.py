"""
Isotropic Bases
Orthonormal isotropic column sets, their Lagrangian completion and the
sweep that builds them from an arbitrary full-rank matrix
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.matcore import (
    Mat,
    SymplecticContext,
    as_mat,
    canonical_frame,
    isotropy_defect,
    norm2,
    numerical_rank,
    orthonormality_defect,
)

from .transforms import givens_symplectic, householder_pair, trailing_pair

logger = logging.getLogger("symplectic")


@dataclass(frozen=True)
class IsotropicBasis:
    """2N x k matrix U with orthonormal columns and U^T J U = 0"""

    U: Mat
    ctx: SymplecticContext

    def __post_init__(self):
        U = np.asarray(self.U, dtype=np.float64)
        if U.ndim != 2 or U.shape[0] != self.ctx.dim:
            raise SymplecticError("dimension", f"U has shape {U.shape}, expected ({self.ctx.dim}, k)")
        if U.shape[1] > self.ctx.n_half:
            raise SymplecticError(
                "dimension", f"isotropic subspaces have dimension <= {self.ctx.n_half}, got {U.shape[1]}"
            )
        if not np.all(np.isfinite(U)):
            raise SymplecticError("not_finite", "U has NaN or infinite entries")
        U = U.copy()
        U.setflags(write=False)
        object.__setattr__(self, "U", U)

        orth, iso = self.defects()
        if orth > self.ctx.tol_struct:
            raise SymplecticError("structure", f"columns not orthonormal (defect {orth:.3e})")
        if iso > self.ctx.tol_struct:
            raise SymplecticError("structure", f"columns not isotropic (defect {iso:.3e})")

    @property
    def k(self) -> int:
        return int(self.U.shape[1])

    def defects(self) -> Tuple[float, float]:
        """(orthonormality defect, isotropy defect)"""
        return orthonormality_defect(self.U), isotropy_defect(self.U, self.ctx)

    def columns(self, count: int) -> "IsotropicBasis":
        """Basis spanned by the first `count` columns"""
        if not 0 <= count <= self.k:
            raise SymplecticError("dimension", f"cannot take {count} of {self.k} columns")
        return IsotropicBasis(self.U[:, :count], self.ctx)


def isotropic_from(A: Mat, ctx: SymplecticContext) -> Tuple[IsotropicBasis, Mat]:
    """
    Orthonormal isotropic basis from a full-rank 2N x k matrix.

    Sweeps j = 1..k: on column j of the running A it zeroes the first-half
    entries j+1..N with a Householder pair, entry N+j with a Givens
    rotation, then entries j+1..k with a trailing Householder pair. The
    step E_j^T is applied to A and accumulated into Q.

    Args:
        A: 2N x k matrix of full column rank, k <= N
        ctx: Symplectic context

    Returns:
        (basis, Q) with Q orthogonal symplectic. For a block J the basis is
        Q[:, :k]; otherwise the sweep runs in the canonical frame T and the
        basis is (Q T)[:, :k]
    """
    A = as_mat(A, "A")
    N = ctx.n_half
    if A.shape[0] != ctx.dim:
        raise SymplecticError("dimension", f"A has {A.shape[0]} rows, expected {ctx.dim}")
    k = A.shape[1]
    if k > N:
        raise SymplecticError("dimension", f"at most N={N} columns, got {k}")
    if k == 0:
        return IsotropicBasis(np.zeros((ctx.dim, 0)), ctx), as_mat(np.eye(ctx.dim), "Q")

    rank = numerical_rank(A, ctx.tol_rank)
    if rank < k:
        raise SymplecticError("deficient_input", f"A has rank {rank} < {k} columns", {"rank": rank})

    T = canonical_frame(ctx)
    work = np.array(T.T @ A)
    Q = np.eye(ctx.dim)

    for j in range(1, k + 1):
        col = j - 1
        x = work[:, col].copy()

        upper = householder_pair(j, x, ctx)
        x = upper.apply(x)
        x[j:N] = 0.0

        rotation = givens_symplectic(j, x, ctx)
        x = rotation.apply(x)
        x[N + col] = 0.0

        trailing = trailing_pair(j, x, k, ctx)

        step = trailing.matrix() @ rotation.matrix() @ upper.matrix()
        work = step @ work
        work[j:N, col] = 0.0
        work[N + col, col] = 0.0
        Q = Q @ step.T
        logger.debug(
            f"🔍 Sweep step {j}: beta={upper.beta:.3e}, theta={rotation.theta:.6f}, "
            f"gamma={trailing.beta:.3e}"
        )

    U = T @ Q[:, :k]
    Q_ctx = T @ Q @ T.T
    basis = IsotropicBasis(U, ctx)
    orth, iso = basis.defects()
    logger.debug(f"✅ Isotropic basis of rank {k}: orth {orth:.2e}, iso {iso:.2e}")
    return basis, as_mat(Q_ctx, "Q")


def _orthonormal_span(columns: list) -> np.ndarray:
    Qs, _ = np.linalg.qr(np.column_stack(columns))
    return Qs


def extend_to_lagrangian(B: IsotropicBasis) -> IsotropicBasis:
    """
    Complete B to a Lagrangian basis keeping B's columns first.

    Greedy: each new direction is the coordinate vector with the largest
    component outside span(U, J U), normalized.
    """
    ctx = B.ctx
    N = ctx.n_half
    if B.k == N:
        return B

    cols = [B.U[:, i] for i in range(B.k)]
    eye = np.eye(ctx.dim)
    while len(cols) < N:
        if cols:
            Qs = _orthonormal_span(cols + [ctx.J @ c for c in cols])
            candidates = eye - Qs @ (Qs.T @ eye)
        else:
            Qs = np.zeros((ctx.dim, 0))
            candidates = eye.copy()
        norms = np.linalg.norm(candidates, axis=0)
        pick = int(np.argmax(norms))
        z = candidates[:, pick]
        z = z - Qs @ (Qs.T @ z)
        z /= np.linalg.norm(z)
        cols.append(z)

    extended = IsotropicBasis(np.column_stack(cols), ctx)
    logger.debug(f"✅ Extended isotropic basis from {B.k} to {N} columns")
    return extended


def is_lagrangian(L: np.ndarray, ctx: SymplecticContext) -> bool:
    """rank N and L^T J L = 0 (relative to ||L||^2)"""
    L = np.asarray(L, dtype=np.float64)
    if L.ndim != 2 or L.shape[0] != ctx.dim:
        raise SymplecticError("dimension", f"L has shape {L.shape}, expected ({ctx.dim}, N)")
    if numerical_rank(L, ctx.tol_rank) != ctx.n_half:
        return False
    scale = max(1.0, norm2(L) ** 2)
    return isotropy_defect(L, ctx) <= ctx.tol_struct * scale


def lagrangian_frame(L: IsotropicBasis) -> Mat:
    """
    Orthogonal symplectic W = [L, sign * J^T L] whose first N columns are L.

    Needs a block J; sign is +1 for [[0, I], [-I, 0]] and -1 for its negative.
    """
    ctx = L.ctx
    if L.k != ctx.n_half:
        raise SymplecticError("dimension", f"need a Lagrangian basis of {ctx.n_half} columns, got {L.k}")
    sign = ctx.block_sign
    if sign is None:
        raise SymplecticError("structure", "lagrangian_frame requires a block J")
    W = np.hstack([L.U, sign * (ctx.J.T @ L.U)])
    return as_mat(W, "W")


def random_orthogonal_symplectic(ctx: SymplecticContext, rng: Optional[np.random.Generator] = None) -> Mat:
    """Orthogonal symplectic matrix from a Gaussian 2N x N draw"""
    rng = rng if rng is not None else np.random.default_rng()
    A = rng.standard_normal((ctx.dim, ctx.n_half))
    basis, Q = isotropic_from(A, ctx)
    if ctx.block_sign is None:
        return Q
    return lagrangian_frame(basis)
