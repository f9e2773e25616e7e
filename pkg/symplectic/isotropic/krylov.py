"""
Krylov Isotropy
Krylov subspaces of skew-Hamiltonian matrices are isotropic
"""

import logging
from typing import Optional

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.matcore import Mat, SymplecticContext, as_mat, is_skew_hamiltonian, isotropy_defect, norm2

logger = logging.getLogger("symplectic")


def krylov_basis(S: np.ndarray, u: np.ndarray, j: int) -> np.ndarray:
    """
    Orthonormal basis of span{u, S u, ..., S^(j-1) u}.

    Arnoldi with two Gram-Schmidt passes; stops early once the subspace
    becomes invariant.
    """
    u = np.asarray(u, dtype=np.float64)
    nu = np.linalg.norm(u)
    if nu == 0.0:
        return np.zeros((u.shape[0], 0))
    basis = [u / nu]
    breakdown = 1e-10 * max(1.0, norm2(S))
    for _ in range(1, j):
        w = S @ basis[-1]
        for _pass in range(2):
            for q in basis:
                w = w - (q @ w) * q
        nw = np.linalg.norm(w)
        if nw <= breakdown:
            break
        basis.append(w / nw)
    return np.column_stack(basis)


def krylov_isotropy_check(S: Mat, u: np.ndarray, j: int, ctx: SymplecticContext) -> bool:
    """
    Check that the j-step Krylov subspace of a skew-Hamiltonian S is isotropic.

    Raises:
        SymplecticError: code structure when J S is not skew-symmetric
    """
    S = ctx.check_square(S, "S")
    u = ctx.check_vector(u, "u")
    if j < 1:
        raise SymplecticError("domain", f"Krylov dimension must be >= 1, got {j}")
    ok, defect = is_skew_hamiltonian(S, ctx)
    if not ok:
        raise SymplecticError("structure", f"S is not skew-Hamiltonian (defect {defect:.3e})")

    K = krylov_basis(S, u, j)
    iso = isotropy_defect(K, ctx)
    logger.debug(f"🔍 Krylov subspace of dimension {K.shape[1]}: isotropy defect {iso:.2e}")
    return iso <= ctx.tol_struct


def random_skew_hamiltonian(ctx: SymplecticContext, rng: Optional[np.random.Generator] = None) -> Mat:
    """S = J^T K with K skew-symmetric, so J S = K"""
    rng = rng if rng is not None else np.random.default_rng()
    K = rng.standard_normal((ctx.dim, ctx.dim))
    K = K - K.T
    return as_mat(ctx.J.T @ K, "S")
