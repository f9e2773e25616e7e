"""
Jordan Structure
Segre characteristics, structured generators and rank-k predictions
"""

from .segre import SegreCharacteristic, segre_at, spectrum_structure, total_multiplicity, weyr_to_segre
from .generator import half_dimension, jordan_block, symplectic_with_structure
from .thr import ThrReport, check_thr, predict_segre, random_lagrangian_columns

__all__ = [
    "SegreCharacteristic",
    "segre_at",
    "spectrum_structure",
    "total_multiplicity",
    "weyr_to_segre",
    "half_dimension",
    "jordan_block",
    "symplectic_with_structure",
    "ThrReport",
    "check_thr",
    "predict_segre",
    "random_lagrangian_columns",
]
