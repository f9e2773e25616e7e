"""
Matrix Core
Context, structure predicates, spectra and Cayley maps
"""

from .context import Mat, SymplecticContext, as_mat, canonical_frame, norm2, symmetrize
from .predicates import (
    is_symplectic,
    is_hamiltonian,
    is_skew_hamiltonian,
    isotropy_defect,
    orthonormality_defect,
    split_isotropy,
)
from .spectra import (
    ComplexSpectrum,
    eig,
    numerical_rank,
    rank_with_margin,
    singular_values,
    solve_with_condition,
)
from .cayley import cayley_plus, cayley_minus, inverse_cayley_plus, inverse_cayley_minus
from .mat_io import read_mat_csv, write_mat_csv

__all__ = [
    "Mat",
    "SymplecticContext",
    "as_mat",
    "canonical_frame",
    "norm2",
    "symmetrize",
    "is_symplectic",
    "is_hamiltonian",
    "is_skew_hamiltonian",
    "isotropy_defect",
    "orthonormality_defect",
    "split_isotropy",
    "ComplexSpectrum",
    "eig",
    "numerical_rank",
    "rank_with_margin",
    "singular_values",
    "solve_with_condition",
    "cayley_plus",
    "cayley_minus",
    "inverse_cayley_plus",
    "inverse_cayley_minus",
    "read_mat_csv",
    "write_mat_csv",
]
