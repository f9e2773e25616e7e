"""
Matrizant Integration
Adaptive and fixed-step integration of J dX/dt = H(t) X
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp

from symplectic import settings
from symplectic.errors import IntegrationError, SymplecticError
from symplectic.matcore import Mat, SymplecticContext, as_mat, is_symplectic, norm2

from .systems import PeriodicHamiltonian

logger = logging.getLogger("symplectic")


@dataclass(frozen=True)
class Trajectory:
    """States X(t) sampled at ascending times, with the integrator settings used"""

    times: np.ndarray
    states: np.ndarray
    integrator_tol: float
    method: str
    max_drift: Optional[float] = None
    nfev: int = 0

    @property
    def final(self) -> Mat:
        return as_mat(self.states[-1], "X(t_end)")

    def max_norm(self) -> float:
        return max(norm2(X) for X in self.states)

    def __len__(self) -> int:
        return int(self.times.shape[0])


def _time_grid(t_end: float, grid: Optional[Iterable[float]]) -> np.ndarray:
    points = {0.0, float(t_end)}
    if grid is not None:
        points.update(float(t) for t in grid)
    times = np.array(sorted(points))
    if times[0] < 0 or times[-1] > t_end:
        raise SymplecticError("domain", f"sample times must lie in [0, {t_end}]")
    return times


def _symplectic_drift(states: np.ndarray, ctx: SymplecticContext) -> float:
    return max(norm2(X.T @ ctx.J @ X - ctx.J) for X in states)


def _rhs(system: PeriodicHamiltonian, ctx: SymplecticContext):
    J_inv = np.array(ctx.J_inv)
    n = ctx.dim

    def f(t: float, y: np.ndarray) -> np.ndarray:
        X = y.reshape(n, n)
        return (J_inv @ (system(t) @ X)).ravel()

    return f


def integrate_matrizant(
    system: PeriodicHamiltonian,
    X0: Mat,
    t_end: float,
    ctx: SymplecticContext,
    *,
    grid: Optional[Iterable[float]] = None,
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    method: Optional[str] = None,
) -> Trajectory:
    """
    Integrate dX/dt = J^{-1} H(t) X from X(0) = X0 up to t_end.

    Args:
        system: Periodic coefficient
        X0: Initial state, 2N x 2N
        t_end: Final time, > 0
        ctx: Symplectic context of the system
        grid: Extra sample times in [0, t_end]
        rtol, atol, method: solve_ivp settings, defaults from settings

    Returns:
        Trajectory sampled at {0, t_end} plus the grid

    Raises:
        IntegrationError: stiff (step size underflow) or blowup (non-finite state)
    """
    X0 = ctx.check_square(X0, "X0")
    if system.dim != ctx.dim:
        raise SymplecticError("dimension", f"system dimension {system.dim} != {ctx.dim}")
    if not np.isfinite(t_end) or t_end <= 0:
        raise SymplecticError("domain", f"t_end must be positive, got {t_end}")
    rtol = settings.INTEGRATOR_RTOL if rtol is None else rtol
    atol = settings.INTEGRATOR_ATOL if atol is None else atol
    method = method or settings.INTEGRATOR_METHOD
    times = _time_grid(t_end, grid)
    n = ctx.dim

    with np.errstate(over="ignore", invalid="ignore"):
        sol = solve_ivp(
            _rhs(system, ctx),
            (0.0, float(t_end)),
            np.array(X0).ravel(),
            method=method,
            t_eval=times,
            rtol=rtol,
            atol=atol,
        )
    if not sol.success:
        code = "stiff" if "step size" in sol.message.lower() else "blowup"
        raise IntegrationError(code, f"integration of {system.name} failed: {sol.message}", {"t": float(sol.t[-1]) if sol.t.size else 0.0})

    states = sol.y.T.reshape(-1, n, n)
    if not np.all(np.isfinite(states)):
        raise IntegrationError("blowup", f"non-finite state while integrating {system.name}")

    drift = None
    if is_symplectic(X0, ctx)[0]:
        drift = _symplectic_drift(states, ctx)
    logger.debug(
        f"🔍 Integrated {system.name} to t={t_end:.6g} with {method} "
        f"(rtol={rtol:.1e}, nfev={sol.nfev}, drift={drift if drift is None else f'{drift:.2e}'})"
    )
    return Trajectory(
        times=sol.t,
        states=states,
        integrator_tol=max(rtol, atol),
        method=method,
        max_drift=drift,
        nfev=int(sol.nfev),
    )


def integrate_matrizant_rk4(
    system: PeriodicHamiltonian,
    X0: Mat,
    t_end: float,
    ctx: SymplecticContext,
    steps: Optional[int] = None,
) -> Trajectory:
    """
    Classical fixed-step RK4 cross-check of integrate_matrizant.

    `steps` defaults to the configured count per period, scaled to t_end.
    """
    X0 = ctx.check_square(X0, "X0")
    if not np.isfinite(t_end) or t_end <= 0:
        raise SymplecticError("domain", f"t_end must be positive, got {t_end}")
    if steps is None:
        steps = max(1, int(np.ceil(settings.RK4_STEPS_PER_PERIOD * t_end / system.period)))
    J_inv = np.array(ctx.J_inv)
    h = t_end / steps

    def f(t: float, X: np.ndarray) -> np.ndarray:
        return J_inv @ (system(t) @ X)

    X = np.array(X0)
    t = 0.0
    for i in range(steps):
        t = i * h
        k1 = f(t, X)
        k2 = f(t + h / 2, X + h / 2 * k1)
        k3 = f(t + h / 2, X + h / 2 * k2)
        k4 = f(t + h, X + h * k3)
        X = X + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    if not np.all(np.isfinite(X)):
        raise IntegrationError("blowup", f"non-finite state in RK4 run of {system.name}")

    states = np.stack([np.array(X0), X])
    drift = _symplectic_drift(states, ctx) if is_symplectic(X0, ctx)[0] else None
    return Trajectory(
        times=np.array([0.0, float(t_end)]),
        states=states,
        integrator_tol=h ** 4,
        method="RK4",
        max_drift=drift,
        nfev=4 * steps,
    )


def monodromy(system: PeriodicHamiltonian, ctx: SymplecticContext, **kwargs) -> Mat:
    """X(P) with X(0) = I"""
    traj = integrate_matrizant(system, np.eye(ctx.dim), system.period, ctx, **kwargs)
    if traj.max_drift is not None and traj.max_drift > 1e-9:
        logger.warning(f"⚠️ Symplectic drift {traj.max_drift:.2e} over one period of {system.name}")
    return traj.final


def check_semigroup(
    system: PeriodicHamiltonian,
    ctx: SymplecticContext,
    fractions: Sequence[float] = (0.25, 0.5),
    **kwargs,
) -> Dict[float, float]:
    """
    ||X(t + P) - X(t) X(P)|| for t = fraction * P.

    Returns:
        Mapping fraction -> defect
    """
    P = system.period
    grid = [f * P for f in fractions] + [f * P + P for f in fractions] + [P]
    traj = integrate_matrizant(system, np.eye(ctx.dim), 2 * P, ctx, grid=grid, **kwargs)

    def at(t: float) -> np.ndarray:
        idx = int(np.argmin(np.abs(traj.times - t)))
        return traj.states[idx]

    XP = at(P)
    return {float(f): norm2(at(f * P + P) - at(f * P) @ XP) for f in fractions}


def write_trajectory(path: Union[str, Path], traj: Trajectory) -> Path:
    """CSV with columns t, x_1_1, x_1_2, ... (row-major entries of X(t))"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = traj.states.shape[1]
    columns = [f"x_{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    frame = pd.DataFrame(traj.states.reshape(len(traj), n * n), columns=columns)
    frame.insert(0, "t", traj.times)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.debug(f"📄 Wrote trajectory with {len(traj)} samples to {path}")
    return path
