"""
Spectra and Ranks
Eigen-decomposition with residuals, numerical rank and conditioned solves
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from symplectic import settings
from symplectic.errors import EigenSolverError, SymplecticError

from .context import Mat, norm2

logger = logging.getLogger("symplectic")


@dataclass(frozen=True)
class ComplexSpectrum:
    """
    Eigenvalues sorted by (modulus, argument) with unit-norm eigenvectors
    as columns and the residual ||A x - lambda x|| of each pair.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    matrix_norm: float

    @property
    def residual_bound(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0

    def __len__(self) -> int:
        return int(self.eigenvalues.shape[0])


def eig(A: Mat) -> ComplexSpectrum:
    """
    Eigenvalues and right eigenvectors of a real square matrix.

    Raises:
        EigenSolverError: when LAPACK does not converge
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SymplecticError("dimension", f"eig needs a square matrix, got {A.shape}")
    try:
        w, V = scipy.linalg.eig(A)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(f"eigensolver failed: {e}") from e

    norms = np.linalg.norm(V, axis=0)
    norms[norms == 0] = 1.0
    V = V / norms

    # modulus rounded so conjugate pairs sort by argument
    order = np.lexsort((np.angle(w), np.round(np.abs(w), 12)))
    w = w[order]
    V = V[:, order]
    residuals = np.linalg.norm(A @ V - V * w, axis=0)
    return ComplexSpectrum(eigenvalues=w, eigenvectors=V, residuals=residuals, matrix_norm=norm2(A))


def singular_values(A: np.ndarray) -> np.ndarray:
    if A.size == 0:
        return np.zeros(0)
    return scipy.linalg.svdvals(A)


def rank_with_margin(A: np.ndarray, tol_rank: float, scale: Optional[float] = None) -> Tuple[int, bool]:
    """
    Numerical rank plus a flag for singular values within a factor 10 of
    the cutoff.

    Args:
        A: Matrix, real or complex
        tol_rank: Relative cutoff
        scale: Optional reference magnitude; cutoff is tol_rank * max(sigma_max, scale)

    Returns:
        (rank, borderline)
    """
    if A.ndim != 2 or A.size == 0:
        raise SymplecticError("dimension", f"rank needs a nonempty matrix, got {A.shape}")
    s = singular_values(A)
    reference = max(float(s[0]), scale or 0.0)
    if reference == 0.0:
        return 0, False
    cutoff = tol_rank * reference
    borderline = bool(np.any((s > cutoff / 10.0) & (s < cutoff * 10.0)))
    return int(np.sum(s > cutoff)), borderline


def numerical_rank(A: np.ndarray, tol_rank: float, scale: Optional[float] = None) -> int:
    """Count of singular values above tol_rank * sigma_max (0 for the zero matrix)"""
    rank, _ = rank_with_margin(A, tol_rank, scale)
    return rank


def solve_with_condition(A: np.ndarray, B: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Solve A X = B through an LU factorization.

    Returns:
        (X, cond) where cond is the 1-norm condition number of A
    """
    # complex inputs come back with a complex dtype
    cond = float(np.abs(np.linalg.cond(A, 1)))
    if not np.isfinite(cond):
        raise SymplecticError("domain", "matrix is singular", {"cond": cond})
    lu, piv = scipy.linalg.lu_factor(A)
    X = scipy.linalg.lu_solve((lu, piv), B)
    if cond > settings.COND_WARN:
        logger.warning(f"⚠️ Ill-conditioned solve (cond ~ {cond:.2e})")
    return X, cond
