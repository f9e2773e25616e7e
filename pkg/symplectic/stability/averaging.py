"""
Averaged Matrices
S(n) = 2^-n * sum_{k<2^n} (W^T)^k W^k by repeated squaring
"""

import logging
from typing import List, Tuple

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.matcore import Mat, norm2

logger = logging.getLogger("symplectic")

MAX_DOUBLINGS = 60


def averaged_sequence(W: Mat, n_max: int = 30) -> List[Tuple[int, np.ndarray]]:
    """
    History S(0) = I, ..., S(n_max) from
    S(n+1) = (S(n) + (W^T)^(2^n) S(n) W^(2^n)) / 2.

    Once an entry overflows the remaining terms are reported as +inf
    matrices; overflow means unbounded powers, not an error.
    """
    if not 0 <= n_max <= MAX_DOUBLINGS:
        raise SymplecticError("domain", f"n_max must lie in 0..{MAX_DOUBLINGS}, got {n_max}")
    W = np.asarray(W, dtype=np.float64)
    n = W.shape[0]
    S = np.eye(n)
    power = W.copy()
    history = [(0, S.copy())]
    overflowed = False
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, n_max + 1):
            if overflowed:
                history.append((step, np.full((n, n), np.inf)))
                continue
            S = 0.5 * (S + power.T @ S @ power)
            S = 0.5 * (S + S.T)
            power = power @ power
            if not np.all(np.isfinite(S)):
                overflowed = True
                logger.debug(f"🔍 Averaged sequence overflowed at n={step}")
                history.append((step, np.full((n, n), np.inf)))
                continue
            history.append((step, S.copy()))
    return history


def sequence_norms(history: List[Tuple[int, np.ndarray]]) -> List[Tuple[int, float]]:
    """(n, ||S(n)||_2), +inf for overflowed terms"""
    return [(n, norm2(S) if np.all(np.isfinite(S)) else float("inf")) for n, S in history]


def relative_change(history: List[Tuple[int, np.ndarray]]) -> float:
    """||S(n) - S(n-1)|| / ||S(n-1)|| at the last step"""
    if len(history) < 2:
        return 0.0
    prev, last = history[-2][1], history[-1][1]
    if not (np.all(np.isfinite(prev)) and np.all(np.isfinite(last))):
        return float("inf")
    return norm2(last - prev) / norm2(prev)


def is_bounded(norms: List[Tuple[int, float]], window: int = 5, tol: float = 1e-3) -> bool:
    """Norm ratios of the last `window` steps all within tol of 1"""
    values = [v for _, v in norms]
    if len(values) < window + 1 or not np.all(np.isfinite(values[-(window + 1):])):
        return False
    tail = values[-(window + 1):]
    return all(abs(b / a - 1.0) <= tol for a, b in zip(tail[:-1], tail[1:]))
