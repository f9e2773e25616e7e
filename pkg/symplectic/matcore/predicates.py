"""
Structure Predicates
Symplectic, Hamiltonian and skew-Hamiltonian tests with their defects
"""

from typing import Optional, Tuple

import numpy as np

from .context import Mat, SymplecticContext, norm2


def is_symplectic(W: Mat, ctx: SymplecticContext, tol: Optional[float] = None) -> Tuple[bool, float]:
    """
    Check W^T J W = J.

    Args:
        W: Square matrix of order 2N
        ctx: Symplectic context
        tol: Acceptance bound, defaults to ctx.tol_struct

    Returns:
        (passes, defect) with defect = ||W^T J W - J||_2
    """
    W = ctx.check_square(W, "W")
    defect = norm2(W.T @ ctx.J @ W - ctx.J)
    bound = ctx.tol_struct if tol is None else tol
    return defect <= bound, defect


def is_hamiltonian(A: Mat, ctx: SymplecticContext, tol: Optional[float] = None) -> Tuple[bool, float]:
    """J A symmetric"""
    A = ctx.check_square(A, "A")
    JA = ctx.J @ A
    defect = norm2(JA - JA.T)
    bound = ctx.tol_struct * max(1.0, norm2(A)) if tol is None else tol
    return defect <= bound, defect


def is_skew_hamiltonian(S: Mat, ctx: SymplecticContext, tol: Optional[float] = None) -> Tuple[bool, float]:
    """J S skew-symmetric"""
    S = ctx.check_square(S, "S")
    JS = ctx.J @ S
    defect = norm2(JS + JS.T)
    bound = ctx.tol_struct * max(1.0, norm2(S)) if tol is None else tol
    return defect <= bound, defect


def isotropy_defect(U: np.ndarray, ctx: SymplecticContext) -> float:
    """||U^T J U||_2 for a 2N x k block of columns"""
    return norm2(U.T @ ctx.J @ U)


def orthonormality_defect(U: np.ndarray) -> float:
    return norm2(U.T @ U - np.eye(U.shape[1]))


def split_isotropy(W: Mat, ctx: SymplecticContext) -> Tuple[float, float]:
    """
    Isotropy defects of the two column halves of W = [S1 S2].

    Returns:
        (||S1^T J S1||, ||S2^T J S2||); both vanish for symplectic W under a block J
    """
    W = ctx.check_square(W, "W")
    N = ctx.n_half
    return isotropy_defect(W[:, :N], ctx), isotropy_defect(W[:, N:], ctx)
