"""
Symplectic Library
Rank-k structured perturbation of symplectic matrices and of linear
Hamiltonian systems with periodic coefficients
"""

from .errors import SymplecticError, EigenSolverError, IntegrationError, ConfigError

__all__ = ["SymplecticError", "EigenSolverError", "IntegrationError", "ConfigError"]
