"""
Periodic Hamiltonian Systems
Coefficient evaluators t -> H(t), the two built-in test systems and
trigonometric-polynomial systems read from files
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from dotenv import dotenv_values

from symplectic.errors import ConfigError, SymplecticError
from symplectic.matcore import Mat, SymplecticContext, as_mat, norm2, read_mat_csv

logger = logging.getLogger("symplectic")


@dataclass(frozen=True)
class PeriodicHamiltonian:
    """Symmetric, P-periodic coefficient H(t) of J dX/dt = H(t) X"""

    dim: int
    period: float
    evaluator: Callable[[float], np.ndarray]
    name: str = "custom"
    params: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 2 or self.dim % 2:
            raise SymplecticError("dimension", f"system dimension must be even, got {self.dim}")
        if not np.isfinite(self.period) or self.period <= 0:
            raise SymplecticError("domain", f"period must be positive, got {self.period}")

    def __call__(self, t: float) -> np.ndarray:
        return self.evaluator(t)

    def validate(self, ctx: SymplecticContext, samples: int = 32) -> None:
        """
        Check symmetry and periodicity at `samples` points of one period.

        Raises:
            SymplecticError: not_symmetric or structure
        """
        if ctx.dim != self.dim:
            raise SymplecticError("dimension", f"system has dimension {self.dim}, context {ctx.dim}")
        for t in np.linspace(0.0, self.period, samples, endpoint=False):
            H = np.asarray(self(t))
            scale = max(1.0, norm2(H))
            if norm2(H - H.T) > ctx.tol_struct * scale:
                raise SymplecticError("not_symmetric", f"H({t:.6g}) is not symmetric")
            drift = norm2(np.asarray(self(t + self.period)) - H)
            if drift > ctx.tol_struct * scale:
                raise SymplecticError("structure", f"H is not {self.period:.6g}-periodic at t={t:.6g}")


def example_context(**tols) -> SymplecticContext:
    """J = [[0, -I3], [I3, 0]] used by both built-in systems"""
    return SymplecticContext.block(3, sign=-1, **tols)


def example1(
    epsilon: float,
    delta: float,
    *,
    p: Sequence[float] = (4.0, 3.0, 2.0),
    q: Sequence[float] = (1.0, 1.0, 1.0),
    gamma: float = float(np.sqrt(7.0)),
    c: float = 0.0,
    g: Optional[float] = None,
) -> PeriodicHamiltonian:
    """
    Three coupled oscillators with parametric forcing, H = diag(P(t), I3).

    P11 = (p1 + eps cos(gamma t)) / q1, P22 = p2 / q2, P33 = p3 / q3,
    P13 = (delta cos(2 gamma t) + c sin(2 gamma t)) / sqrt(q1 q3),
    P23 = g sin(5 gamma t) / sqrt(q2 q3), g defaulting to eps.
    Period 2 pi / gamma.
    """
    g = epsilon if g is None else g
    p1, p2, p3 = (float(v) for v in p)
    q1, q2, q3 = (float(v) for v in q)
    if min(q1, q2, q3) <= 0:
        raise SymplecticError("domain", "q entries must be positive")

    def coefficient(t: float) -> np.ndarray:
        P = np.zeros((3, 3))
        P[0, 0] = (p1 + epsilon * np.cos(gamma * t)) / q1
        P[1, 1] = p2 / q2
        P[2, 2] = p3 / q3
        P[0, 2] = P[2, 0] = (delta * np.cos(2 * gamma * t) + c * np.sin(2 * gamma * t)) / np.sqrt(q1 * q3)
        P[1, 2] = P[2, 1] = g * np.sin(5 * gamma * t) / np.sqrt(q2 * q3)
        return scipy.linalg.block_diag(P, np.eye(3))

    return PeriodicHamiltonian(
        dim=6,
        period=2 * np.pi / gamma,
        evaluator=coefficient,
        name="example1",
        params={"epsilon": float(epsilon), "delta": float(delta)},
    )


def example2(a: float, b: float) -> PeriodicHamiltonian:
    """
    H = diag(P(t), I3) with
    P = [[4 + a cos 7t, 0, b cos 14t],
         [0, a + b sin 14t, a sin 35t],
         [b cos 14t, a sin 35t, 3]], period 2 pi / 7.
    """

    def coefficient(t: float) -> np.ndarray:
        P = np.array([
            [4 + a * np.cos(7 * t), 0.0, b * np.cos(14 * t)],
            [0.0, a + b * np.sin(14 * t), a * np.sin(35 * t)],
            [b * np.cos(14 * t), a * np.sin(35 * t), 3.0],
        ])
        return scipy.linalg.block_diag(P, np.eye(3))

    return PeriodicHamiltonian(
        dim=6,
        period=2 * np.pi / 7,
        evaluator=coefficient,
        name="example2",
        params={"a": float(a), "b": float(b)},
    )


@dataclass(frozen=True)
class TrigTerm:
    """coefficient * cos|sin(multiplier * 2 pi t / period)"""

    coefficient: Mat
    multiplier: float
    kind: str = "cos"

    def __post_init__(self):
        if self.kind not in ("cos", "sin"):
            raise SymplecticError("domain", f"term kind must be cos or sin, got {self.kind!r}")


def trig_hamiltonian(terms: List[TrigTerm], constant: Mat, period: float, name: str = "file") -> PeriodicHamiltonian:
    """H(t) = constant + sum of trigonometric terms; all coefficients symmetric"""
    constant = as_mat(constant, "constant")
    n = constant.shape[0]
    for idx, term in enumerate([TrigTerm(constant, 0.0)] + list(terms)):
        C = term.coefficient
        if C.shape != (n, n):
            raise SymplecticError("dimension", f"term {idx} has shape {C.shape}, expected {(n, n)}")
        if norm2(C - C.T) > 1e-12 * max(1.0, norm2(C)):
            raise SymplecticError("not_symmetric", f"term {idx} coefficient is not symmetric")
    omega = 2 * np.pi / period

    def coefficient(t: float) -> np.ndarray:
        H = np.array(constant)
        for term in terms:
            wave = np.cos if term.kind == "cos" else np.sin
            H = H + term.coefficient * wave(term.multiplier * omega * t)
        return H

    return PeriodicHamiltonian(dim=n, period=float(period), evaluator=coefficient, name=name)


def load_trig_system(path: Union[str, Path]) -> PeriodicHamiltonian:
    """
    Read a system description file of key=value lines:

        period=0.8975979010256552
        constant=h0.csv
        term_1=h1.csv,1,cos
        term_2=h2.csv,2,sin

    Matrix paths are relative to the description file.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"system file not found: {path}")
    values = dotenv_values(path)
    base = path.parent
    try:
        period = float(values["period"])
        constant = read_mat_csv(base / values["constant"])
    except KeyError as e:
        raise ConfigError(f"system file {path} is missing key {e}") from e
    except ValueError as e:
        raise ConfigError(f"system file {path}: {e}") from e

    terms = []
    for key in sorted(k for k in values if k.startswith("term_")):
        parts = [part.strip() for part in (values[key] or "").split(",")]
        if len(parts) != 3:
            raise ConfigError(f"{key} must read <csv>,<multiplier>,<cos|sin>")
        try:
            terms.append(TrigTerm(read_mat_csv(base / parts[0]), float(parts[1]), parts[2]))
        except ValueError as e:
            raise ConfigError(f"{key}: {e}") from e
    logger.info(f"📄 Loaded trigonometric system from {path} ({len(terms)} terms)")
    return trig_hamiltonian(terms, constant, period, name=path.stem)


# Gaussian draws used to seed the isotropic bases of the reference runs,
# keyed by (system name, first parameter, second parameter)
REFERENCE_MATRICES: Dict[Tuple[str, float, float], List[List[float]]] = {
    ("example1", 2.0, 4.0): [
        [0.8147, 0.2785, 0.9572],
        [0.9058, 0.5469, 0.4854],
        [0.1270, 0.9575, 0.8003],
        [0.9134, 0.9575, 0.1419],
        [0.6324, 0.1576, 0.4218],
        [0.0975, 0.9706, 0.9157],
    ],
    ("example1", 15.0, 4.0): [
        [0.7482, 0.8258, 0.9619],
        [0.4505, 0.5383, 0.0046],
        [0.0838, 0.9961, 0.7749],
        [0.2290, 0.0782, 0.8173],
        [0.9133, 0.4427, 0.8687],
        [0.1524, 0.1067, 0.0844],
    ],
    ("example2", 2.0, 2.0): [
        [0.5377, -0.4336, 0.7254],
        [1.8339, 0.3426, -0.0631],
        [-2.2588, 3.5784, 0.7147],
        [0.8622, 2.7694, -0.2050],
        [0.3188, -1.3499, -0.1241],
        [-1.3077, 3.0349, 1.4897],
    ],
    ("example2", 18.95, 2.0): [
        [1.4090, 0.4889, 0.8884],
        [1.4172, 1.0347, -1.1471],
        [0.6715, 0.7269, -1.0689],
        [-1.2075, -0.3034, -0.8095],
        [0.7172, 0.2939, -2.9443],
        [1.6302, -0.7873, 1.4384],
    ],
}


def reference_matrix(system: PeriodicHamiltonian) -> Optional[Mat]:
    """Stored 6x3 seed matrix for a built-in system, if there is one"""
    values = list(system.params.values())
    if len(values) != 2:
        return None
    key = (system.name, round(values[0], 6), round(values[1], 6))
    rows = REFERENCE_MATRICES.get(key)
    return as_mat(rows, "reference") if rows is not None else None
