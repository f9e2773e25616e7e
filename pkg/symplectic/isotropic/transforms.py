"""
Elementary Symplectic Transforms
Householder pairs H + H and Givens rotations in a (j, N+j) plane
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.matcore import Mat, SymplecticContext, as_mat

logger = logging.getLogger("symplectic")

# Pivots below this magnitude are treated as zero when choosing theta
TINY = 1e-300


class TransformKind(Enum):
    HOUSEHOLDER_PAIR = "householder_pair"
    GIVENS = "givens"


@dataclass(frozen=True)
class ElementarySymplecticOrthogonal:
    """
    One orthogonal symplectic factor of the isotropic-basis sweep.

    `j` is 1-based. A Householder pair carries (v, beta) with v an N-vector
    and realizes diag(H, H), H = I - beta v v^T. A Givens factor carries
    theta and realizes the rotation mixing rows j and N+j as
    [[cos, -sin], [sin, cos]]. The realized matrix is what gets applied to
    the vector it was computed from.
    """

    kind: TransformKind
    j: int
    n_half: int
    v: Optional[np.ndarray] = None
    beta: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not 1 <= self.j <= self.n_half:
            raise SymplecticError("dimension", f"index j={self.j} outside 1..{self.n_half}")
        if self.kind is TransformKind.HOUSEHOLDER_PAIR:
            if self.v is None or self.v.shape != (self.n_half,):
                raise SymplecticError("dimension", "Householder vector must have length N")

    @property
    def is_identity(self) -> bool:
        if self.kind is TransformKind.GIVENS:
            return self.theta == 0.0
        return self.beta == 0.0

    def matrix(self) -> Mat:
        N = self.n_half
        E = np.eye(2 * N)
        if self.kind is TransformKind.HOUSEHOLDER_PAIR:
            H = np.eye(N) - self.beta * np.outer(self.v, self.v)
            E[:N, :N] = H
            E[N:, N:] = H
        else:
            p, q = self.j - 1, N + self.j - 1
            c, s = np.cos(self.theta), np.sin(self.theta)
            E[p, p], E[p, q] = c, -s
            E[q, p], E[q, q] = s, c
        return as_mat(E, f"{self.kind.value}_{self.j}")

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix() @ np.asarray(x, dtype=np.float64)


def reflector(y: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Householder vector mapping y onto ||y|| e_1 with a nonnegative pivot.

    Returns:
        (v, beta) with (I - beta v v^T) y = ||y|| e_1; beta = 0 when the
        tail of y is already zero
    """
    y = np.asarray(y, dtype=np.float64)
    v = y.copy()
    sigma = float(y[1:] @ y[1:])
    if sigma == 0.0:
        return np.zeros_like(v), 0.0
    mu = np.sqrt(y[0] ** 2 + sigma)
    if y[0] <= 0:
        v[0] = y[0] - mu
    else:
        v[0] = -sigma / (y[0] + mu)
    beta = 2.0 / float(v @ v)
    return v, beta


def householder_pair(j: int, x: np.ndarray, ctx: SymplecticContext,
                     half: str = "upper") -> ElementarySymplecticOrthogonal:
    """
    Householder pair zeroing entries j+1..N of one half of x.

    Args:
        j: 1-based pivot index, 1 <= j <= N
        x: Vector of length 2N
        ctx: Symplectic context
        half: "upper" works on the first N entries, "lower" on the last N

    Returns:
        Transform whose realized diag(H, H) performs the elimination
    """
    N = ctx.n_half
    if not 1 <= j <= N:
        raise SymplecticError("dimension", f"index j={j} outside 1..{N}")
    if half not in ("upper", "lower"):
        raise SymplecticError("domain", f"half must be 'upper' or 'lower', got {half!r}")
    x = ctx.check_vector(x, "x")
    segment = x[:N] if half == "upper" else x[N:]

    v = np.zeros(N)
    tail, beta = reflector(segment[j - 1:])
    v[j - 1:] = tail
    return ElementarySymplecticOrthogonal(TransformKind.HOUSEHOLDER_PAIR, j, N, v=v, beta=beta)


def givens_symplectic(j: int, x: np.ndarray, ctx: SymplecticContext) -> ElementarySymplecticOrthogonal:
    """
    Rotation in the (j, N+j) plane zeroing entry N+j of x.

    theta = arctan(-x[N+j] / x[j]) lies in [-pi/2, pi/2); a vanishing
    x[j] gives -pi/2 and a vanishing pair gives 0.
    """
    N = ctx.n_half
    if not 1 <= j <= N:
        raise SymplecticError("dimension", f"index j={j} outside 1..{N}")
    x = ctx.check_vector(x, "x")
    a, b = x[j - 1], x[N + j - 1]

    if abs(a) < TINY and abs(b) < TINY:
        theta = 0.0
    elif abs(a) < TINY:
        theta = -np.pi / 2
    else:
        theta = float(np.arctan(-b / a)) + 0.0
        if theta >= np.pi / 2:
            theta = -np.pi / 2
    return ElementarySymplecticOrthogonal(TransformKind.GIVENS, j, N, theta=theta)


def trailing_pair(j: int, x: np.ndarray, k: int, ctx: SymplecticContext) -> ElementarySymplecticOrthogonal:
    """
    Householder pair with support on rows j+1..N zeroing first-half
    entries j+1..k of x.

    After the upper reflector of step j those entries are already zero and
    the transform is the identity. Otherwise the segment j+1..N is folded
    onto row k+1, which needs k < N.
    """
    N = ctx.n_half
    x = ctx.check_vector(x, "x")
    v = np.zeros(N)
    if j >= N or k <= j:
        return ElementarySymplecticOrthogonal(TransformKind.HOUSEHOLDER_PAIR, j, N, v=v, beta=0.0)

    segment = x[j:N]
    targets = segment[:k - j]
    if not np.any(targets):
        return ElementarySymplecticOrthogonal(TransformKind.HOUSEHOLDER_PAIR, j, N, v=v, beta=0.0)
    if k >= N:
        raise SymplecticError(
            "structure", f"cannot zero entries {j + 1}..{k} with support {j + 1}..{N}"
        )

    # reflect onto the row right after the zeroed range
    pivot = k - j
    rolled = np.roll(segment, -pivot)
    w, beta = reflector(rolled)
    v[j:] = np.roll(w, pivot)
    return ElementarySymplecticOrthogonal(TransformKind.HOUSEHOLDER_PAIR, j, N, v=v, beta=beta)
