"""
Experiment Configuration
Flat key=value run files merged with command-line overrides
"""

import logging
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from dotenv import dotenv_values

from symplectic import settings
from symplectic.errors import ConfigError, SymplecticError
from symplectic.isotropic import IsotropicBasis, isotropic_from
from symplectic.jordan import SegreCharacteristic
from symplectic.matcore import SymplecticContext
from symplectic.ode import PeriodicHamiltonian, example1, example2, example_context, load_trig_system, reference_matrix

logger = logging.getLogger("experiments")

SYSTEMS = ("example1", "example2", "file")
PERTURBATIONS = ("none", "random", "reference")

# file keys whose attribute name differs
KEY_ALIASES = {"lambda": "lam", "k": "jordan_k"}


@dataclass(frozen=True)
class ExperimentConfig:
    system: str = "example1"
    epsilon: float = 2.0
    delta: float = 4.0
    a: float = 2.0
    b: float = 2.0
    system_file: Optional[Path] = None
    perturbation: str = "random"
    seed: int = 0
    rank: int = 2
    scales: Tuple[float, ...] = (1.0, 0.1, 0.01, 0.001)
    integrator_tol: float = settings.INTEGRATOR_RTOL
    n_max: int = 30
    output_dir: Path = Path("results")
    psi_points: int = settings.PSI_GRID_POINTS
    trials: int = 100
    lam: float = 2.0
    jordan_k: int = 1
    structure: str = "2:2x1"
    matrix: Optional[Path] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ("system_file", "output_dir", "matrix"):
            if data[key] is not None:
                data[key] = str(data[key])
        data["scales"] = list(self.scales)
        return data

    def with_overrides(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)


def _parse_scales(value: Any) -> Tuple[float, ...]:
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = [part for part in str(value).split(",") if part.strip()]
    return tuple(float(v) for v in items)


_PARSERS = {
    "epsilon": float,
    "delta": float,
    "a": float,
    "b": float,
    "seed": int,
    "rank": int,
    "integrator_tol": float,
    "n_max": int,
    "psi_points": int,
    "trials": int,
    "lam": float,
    "jordan_k": int,
    "scales": _parse_scales,
    "system_file": Path,
    "output_dir": Path,
    "matrix": Path,
}


def _coerce(key: str, value: Any) -> Any:
    parser = _PARSERS.get(key)
    if parser is None:
        return str(value).strip()
    try:
        return parser(value.strip() if isinstance(value, str) else value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid value for {key}: {value!r}") from e


def validate(config: ExperimentConfig) -> ExperimentConfig:
    """Range checks that do not need the system dimension"""
    if config.system not in SYSTEMS:
        raise ConfigError(f"system must be one of {SYSTEMS}, got {config.system!r}")
    if config.system == "file" and config.system_file is None:
        raise ConfigError("system=file needs system_file")
    if config.perturbation not in PERTURBATIONS:
        raise ConfigError(f"perturbation must be one of {PERTURBATIONS}, got {config.perturbation!r}")
    if config.perturbation != "none":
        if not config.scales:
            raise ConfigError("scale list must be nonempty when a perturbation is configured")
        if config.rank < 1:
            raise ConfigError(f"rank must be >= 1, got {config.rank}")
    if any(not np.isfinite(s) or s < 0 for s in config.scales):
        raise ConfigError(f"scales must be finite and >= 0, got {list(config.scales)}")
    if not config.integrator_tol > 0:
        raise ConfigError(f"integrator_tol must be positive, got {config.integrator_tol}")
    if not 0 <= config.n_max <= 60:
        raise ConfigError(f"n_max must lie in 0..60, got {config.n_max}")
    if config.trials < 1:
        raise ConfigError(f"trials must be >= 1, got {config.trials}")
    if config.psi_points < 2:
        raise ConfigError(f"psi_points must be >= 2, got {config.psi_points}")
    return config


def load_config(
    path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
    defaults: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Build a config from defaults, then the key=value file, then overrides.

    Args:
        path: Optional run file parsed with dotenv_values
        overrides: Command-line values; None entries are ignored
        defaults: Command-specific defaults applied before the file

    Returns:
        Validated ExperimentConfig
    """
    values: Dict[str, Any] = {}
    for key, value in (defaults or {}).items():
        values[KEY_ALIASES.get(key, key)] = value

    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        for key, value in dotenv_values(path).items():
            if value is None or value == "":
                continue
            values[KEY_ALIASES.get(key.strip(), key.strip())] = value
        logger.info(f"📄 Loaded config from {path}")

    for key, value in (overrides or {}).items():
        if value is not None:
            values[KEY_ALIASES.get(key, key)] = value

    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    config = ExperimentConfig(**{key: _coerce(key, value) for key, value in values.items()})
    return validate(config)


def build_system(config: ExperimentConfig) -> Tuple[PeriodicHamiltonian, SymplecticContext]:
    """Periodic system and its context"""
    if config.system == "example1":
        return example1(config.epsilon, config.delta), example_context()
    if config.system == "example2":
        return example2(config.a, config.b), example_context()
    system = load_trig_system(config.system_file)
    if system.dim % 2:
        raise ConfigError(f"system dimension must be even, got {system.dim}")
    return system, SymplecticContext.block(system.dim // 2, sign=-1)


def build_basis(config: ExperimentConfig, system: PeriodicHamiltonian, ctx: SymplecticContext) -> Optional[IsotropicBasis]:
    """
    Rank-`rank` isotropic basis: the first columns of the basis built from a
    2N x N seed matrix (stored reference draw or seeded Gaussian).
    """
    if config.perturbation == "none":
        return None
    if config.rank > ctx.n_half:
        raise ConfigError(f"rank {config.rank} exceeds N={ctx.n_half}")
    if config.perturbation == "reference":
        A = reference_matrix(system)
        if A is None:
            raise ConfigError(f"no reference matrix stored for {system.name} {system.params}")
    else:
        rng = np.random.default_rng(config.seed)
        A = rng.standard_normal((ctx.dim, ctx.n_half))
    basis, _ = isotropic_from(A, ctx)
    return basis.columns(config.rank)


def parse_structure(text: str) -> List[SegreCharacteristic]:
    """
    "2:2x1" -> J2(2) (paired with 1/2); entries separated by ";",
    blocks by ",", e.g. "1:2x2;3:1x1".
    """
    structure = []
    try:
        for entry in filter(None, (part.strip() for part in text.split(";"))):
            value, blocks = entry.split(":", 1)
            sizes = []
            for block in filter(None, (b.strip() for b in blocks.split(","))):
                size, count = block.lower().split("x", 1)
                sizes.append((int(size), int(count)))
            sizes.sort(reverse=True)
            structure.append(SegreCharacteristic(float(value), tuple(sizes)))
    except (ValueError, TypeError, SymplecticError) as e:
        raise ConfigError(f"cannot parse structure {text!r}: {e}") from e
    if not structure:
        raise ConfigError("structure is empty")
    return structure
