"""
Isotropic Subspaces
Elementary symplectic transforms, isotropic and Lagrangian bases, Krylov isotropy
"""

from .transforms import (
    ElementarySymplecticOrthogonal,
    TransformKind,
    givens_symplectic,
    householder_pair,
    reflector,
    trailing_pair,
)
from .basis import (
    IsotropicBasis,
    extend_to_lagrangian,
    is_lagrangian,
    isotropic_from,
    lagrangian_frame,
    random_orthogonal_symplectic,
)
from .krylov import krylov_basis, krylov_isotropy_check, random_skew_hamiltonian

__all__ = [
    "ElementarySymplecticOrthogonal",
    "TransformKind",
    "givens_symplectic",
    "householder_pair",
    "reflector",
    "trailing_pair",
    "IsotropicBasis",
    "extend_to_lagrangian",
    "is_lagrangian",
    "isotropic_from",
    "lagrangian_frame",
    "random_orthogonal_symplectic",
    "krylov_basis",
    "krylov_isotropy_check",
    "random_skew_hamiltonian",
]
