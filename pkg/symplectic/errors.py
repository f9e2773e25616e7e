"""
Error Types
Exception family raised by the symplectic library
"""

from typing import Any, Dict, Optional


class SymplecticError(Exception):
    """
    Base error carrying a machine-readable code.

    Codes: dimension, not_finite, domain, singular_cayley, deficient_input,
    structure, not_symmetric, not_symplectic, stiff, blowup,
    structure_unrealizable, eig_failed, config
    """

    def __init__(self, code: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"[{code}] {message}")
        self.code = code
        self.message = message
        self.details = details or {}


class EigenSolverError(SymplecticError):
    """Eigensolver did not converge; `partial` holds whatever was computed"""

    def __init__(self, message: str, partial: Any = None):
        super().__init__("eig_failed", message, {"partial": partial})
        self.partial = partial


class IntegrationError(SymplecticError):
    """Matrizant integration failed (code `stiff` or `blowup`)"""
    pass


class ConfigError(SymplecticError):
    """Invalid experiment configuration"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__("config", message, details)
