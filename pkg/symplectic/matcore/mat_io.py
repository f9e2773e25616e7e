"""
Matrix Files
CSV storage with a "rows,cols" header line
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from symplectic.errors import ConfigError, SymplecticError

from .context import Mat, as_mat

logger = logging.getLogger("symplectic")


def write_mat_csv(path: Union[str, Path], m: np.ndarray) -> Path:
    """Write m as CSV, first line "rows,cols", full float precision"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    m = np.atleast_2d(np.asarray(m, dtype=np.float64))
    rows, cols = m.shape
    np.savetxt(path, m, delimiter=",", fmt="%.17g", header=f"{rows},{cols}", comments="")
    logger.debug(f"💾 Saved {rows}x{cols} matrix to {path}")
    return path


def read_mat_csv(path: Union[str, Path]) -> Mat:
    """Read a matrix written by write_mat_csv"""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"matrix file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
    try:
        rows, cols = (int(v) for v in header.split(","))
    except ValueError as e:
        raise ConfigError(f"bad header in {path}: {header!r}") from e
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape != (rows, cols):
        raise SymplecticError(
            "dimension", f"{path} header says {rows}x{cols}, data is {data.shape[0]}x{data.shape[1]}"
        )
    logger.debug(f"📄 Loaded {rows}x{cols} matrix from {path}")
    return as_mat(data, str(path))
