"""
Symplectic Context
Dense real matrices and the skew form J that every structural check is relative to
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from symplectic import settings
from symplectic.errors import SymplecticError

logger = logging.getLogger("symplectic")

Mat = NDArray[np.float64]


def as_mat(a: Any, name: str = "matrix") -> Mat:
    """
    Copy `a` into a finite, read-only float64 2-D array.

    Args:
        a: Anything numpy can turn into a real matrix
        name: Label used in error messages

    Returns:
        Read-only float64 array
    """
    arr = np.array(a, dtype=np.float64)
    if arr.ndim != 2:
        raise SymplecticError("dimension", f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SymplecticError("not_finite", f"{name} has NaN or infinite entries")
    arr.setflags(write=False)
    return arr


def norm2(m: np.ndarray) -> float:
    """Spectral norm, 0 for empty arrays"""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


@dataclass(frozen=True)
class SymplecticContext:
    """
    Fixed skew form J (J^T = -J, J^2 = -I) of order 2N plus the numerical
    tolerances shared by every operation.
    """

    n_half: int
    J: Mat
    tol_struct: float = settings.TOL_STRUCT
    tol_circle: float = settings.TOL_CIRCLE
    tol_rank: float = settings.TOL_RANK

    def __post_init__(self):
        if self.n_half < 1:
            raise SymplecticError("dimension", f"N must be >= 1, got {self.n_half}")
        J = as_mat(self.J, "J")
        object.__setattr__(self, "J", J)
        if J.shape != (2 * self.n_half, 2 * self.n_half):
            raise SymplecticError(
                "dimension", f"J has shape {J.shape}, expected {(2 * self.n_half,) * 2}"
            )
        if not np.array_equal(J.T, -J):
            raise SymplecticError("structure", "J must be exactly skew-symmetric")
        defect = norm2(J @ J + np.eye(J.shape[0]))
        if defect > self.tol_struct:
            raise SymplecticError("structure", f"J^2 + I has norm {defect:.3e}")
        for tol_name in ("tol_struct", "tol_circle", "tol_rank"):
            if not getattr(self, tol_name) > 0:
                raise SymplecticError("domain", f"{tol_name} must be positive")

    @classmethod
    def block(cls, n_half: int, sign: int = -1, **tols) -> "SymplecticContext":
        """
        Context for J = [[0, sign*I], [-sign*I, 0]].

        sign=-1 gives [[0, -I], [I, 0]], the convention of the example
        systems; sign=+1 gives [[0, I], [-I, 0]].
        """
        if sign not in (1, -1):
            raise SymplecticError("domain", f"sign must be +1 or -1, got {sign}")
        eye = np.eye(n_half)
        zero = np.zeros((n_half, n_half))
        J = np.block([[zero, sign * eye], [-sign * eye, zero]])
        return cls(n_half=n_half, J=J, **tols)

    @classmethod
    def from_matrix(cls, J: Any, **tols) -> "SymplecticContext":
        J = as_mat(J, "J")
        if J.shape[0] != J.shape[1] or J.shape[0] % 2:
            raise SymplecticError("dimension", f"J must be square of even order, got {J.shape}")
        return cls(n_half=J.shape[0] // 2, J=J, **tols)

    @property
    def dim(self) -> int:
        return 2 * self.n_half

    @property
    def J_inv(self) -> Mat:
        return self.J.T

    @property
    def block_sign(self) -> Optional[int]:
        """+1 for [[0, I], [-I, 0]], -1 for its negative, None otherwise"""
        N = self.n_half
        upper = self.J[:N, N:]
        if not (np.array_equal(self.J[:N, :N], np.zeros((N, N)))
                and np.array_equal(self.J[N:, N:], np.zeros((N, N)))):
            return None
        if np.array_equal(upper, np.eye(N)):
            return 1
        if np.array_equal(upper, -np.eye(N)):
            return -1
        return None

    def with_tolerances(self, **tols) -> "SymplecticContext":
        values = {
            "tol_struct": self.tol_struct,
            "tol_circle": self.tol_circle,
            "tol_rank": self.tol_rank,
        }
        values.update({k: v for k, v in tols.items() if v is not None})
        return SymplecticContext(n_half=self.n_half, J=self.J, **values)

    def check_square(self, m: Any, name: str = "matrix") -> Mat:
        m = as_mat(m, name)
        if m.shape != (self.dim, self.dim):
            raise SymplecticError(
                "dimension", f"{name} has shape {m.shape}, expected {(self.dim, self.dim)}"
            )
        return m

    def check_vector(self, x: Any, name: str = "vector") -> np.ndarray:
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        if x.shape[0] != self.dim:
            raise SymplecticError("dimension", f"{name} has length {x.shape[0]}, expected {self.dim}")
        if not np.all(np.isfinite(x)):
            raise SymplecticError("not_finite", f"{name} has NaN or infinite entries")
        return x


def canonical_frame(ctx: SymplecticContext) -> Mat:
    """
    Orthogonal T with J = T J0 T^T, J0 = [[0, I], [-I, 0]].

    Block conventions map with T = I (both signs share the same symplectic
    group). Any other J is brought to J0 through its real Schur form.
    """
    N = ctx.n_half
    if ctx.block_sign is not None:
        return as_mat(np.eye(ctx.dim), "T")

    schur_form, Z = scipy.linalg.schur(np.array(ctx.J), output="real")
    first, second = [], []
    for i in range(N):
        p, q = 2 * i, 2 * i + 1
        if schur_form[p, q] > 0:
            first.append(Z[:, p])
            second.append(Z[:, q])
        else:
            first.append(Z[:, q])
            second.append(Z[:, p])
    T = np.column_stack(first + second)

    J0 = SymplecticContext.block(N, sign=1).J
    defect = norm2(T.T @ ctx.J @ T - J0)
    if defect > ctx.tol_struct:
        raise SymplecticError("structure", f"canonical frame defect {defect:.3e}")
    logger.debug(f"🔍 Canonical frame built from Schur form (defect {defect:.2e})")
    return as_mat(T, "T")
