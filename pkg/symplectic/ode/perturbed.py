"""
Perturbed Systems
The rank-k perturbed Hamiltonian system and the solution-equivalence
measure Psi(t) = ||X~(t) - (I + U U^T J) X(t)||
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from symplectic import settings
from symplectic.errors import SymplecticError
from symplectic.matcore import Mat, SymplecticContext, as_mat, norm2, symmetrize
from symplectic.perturb import (
    RankKPerturbation,
    factored_inverse,
    factored_perturbator,
    perturbator,
    perturbator_inverse,
)

from .integrate import integrate_matrizant
from .systems import PeriodicHamiltonian

logger = logging.getLogger("symplectic")


def _congruence(system: PeriodicHamiltonian, M: np.ndarray, label: str) -> PeriodicHamiltonian:
    M = np.array(M)

    def coefficient(t: float) -> np.ndarray:
        return symmetrize(M.T @ system(t) @ M)

    return PeriodicHamiltonian(
        dim=system.dim,
        period=system.period,
        evaluator=coefficient,
        name=f"{system.name}+{label}",
        params=dict(system.params),
    )


def _check_dims(system: PeriodicHamiltonian, p: RankKPerturbation) -> None:
    if system.dim != p.ctx.dim:
        raise SymplecticError("dimension", f"system dimension {system.dim} != perturbation {p.ctx.dim}")


def perturbed_system(system: PeriodicHamiltonian, p: RankKPerturbation) -> Tuple[PeriodicHamiltonian, Mat]:
    """
    Coefficient (I - U U^T J)^T H(t) (I - U U^T J) and initial value I + U U^T J.

    Its solution is (I + U U^T J) X(t) where X solves the original system.
    """
    _check_dims(system, p)
    if p.is_trivial:
        return system, as_mat(np.eye(system.dim), "initial")
    return _congruence(system, perturbator_inverse(p), f"rank{p.rank}"), perturbator(p)


def factored_perturbed_system(system: PeriodicHamiltonian, p: RankKPerturbation) -> Tuple[PeriodicHamiltonian, Mat]:
    """Same system assembled from the k rank-one factors"""
    _check_dims(system, p)
    if p.is_trivial:
        return system, as_mat(np.eye(system.dim), "initial")
    return _congruence(system, factored_inverse(p), f"rank{p.rank}-factored"), factored_perturbator(p)


def psi_grid(system: PeriodicHamiltonian, points: Optional[int] = None) -> np.ndarray:
    """Equispaced grid over one period, both ends included"""
    points = points or settings.PSI_GRID_POINTS
    return np.linspace(0.0, system.period, points)


def _validated_grid(system: PeriodicHamiltonian, grid: Sequence[float]) -> np.ndarray:
    times = np.asarray(list(grid), dtype=np.float64)
    slack = 1e-12 * system.period
    if times.size == 0 or times.min() < -slack or times.max() > system.period + slack:
        raise SymplecticError("domain", f"Psi grid must lie in [0, {system.period}]")
    return np.clip(times, 0.0, system.period)


@dataclass(frozen=True)
class PsiReport:
    """Psi curve plus the scale it should be judged against"""

    times: np.ndarray
    values: np.ndarray
    max_state_norm: float
    rtol: float
    atol: float

    @property
    def max_psi(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0

    @property
    def bound(self) -> float:
        """1e3 * integrator tolerance * max ||X(t)||"""
        return 1e3 * max(self.rtol, self.atol) * self.max_state_norm

    @property
    def within_bound(self) -> bool:
        return self.max_psi <= self.bound

    def to_dict(self) -> Dict[str, float]:
        return {
            "max_psi": self.max_psi,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "max_state_norm": self.max_state_norm,
            "rtol": self.rtol,
            "atol": self.atol,
        }


def psi_report(
    system: PeriodicHamiltonian,
    p: RankKPerturbation,
    grid: Sequence[float],
    ctx: SymplecticContext,
    **kwargs,
) -> PsiReport:
    """
    Integrate the original and the perturbed system and compare
    X~(t) against (I + U U^T J) X(t) on the grid.
    """
    times = _validated_grid(system, grid)
    rtol = kwargs.get("rtol") or settings.INTEGRATOR_RTOL
    atol = kwargs.get("atol") or settings.INTEGRATOR_ATOL
    pert_system, initial = perturbed_system(system, p)
    t_end = float(times.max())

    if t_end <= 0.0:
        values = np.zeros(times.shape[0])
        return PsiReport(times, values, 1.0, rtol, atol)

    base = integrate_matrizant(system, np.eye(ctx.dim), t_end, ctx, grid=times, **kwargs)
    pert = integrate_matrizant(pert_system, initial, t_end, ctx, grid=times, **kwargs)
    I_tilde = np.array(perturbator(p))

    index = {float(t): i for i, t in enumerate(base.times)}
    values: List[float] = []
    for t in times:
        i = index[float(t)]
        values.append(norm2(pert.states[i] - I_tilde @ base.states[i]))
    report = PsiReport(
        times=times,
        values=np.array(values),
        max_state_norm=base.max_norm(),
        rtol=rtol,
        atol=atol,
    )
    logger.debug(f"🔍 Psi for {system.name}, rank {p.rank}, scale {p.scale:g}: max {report.max_psi:.3e}")
    return report


def psi(system: PeriodicHamiltonian, p: RankKPerturbation, grid: Sequence[float], ctx: SymplecticContext, **kwargs) -> List[float]:
    """Psi(t_i) on the grid"""
    return [float(v) for v in psi_report(system, p, grid, ctx, **kwargs).values]
