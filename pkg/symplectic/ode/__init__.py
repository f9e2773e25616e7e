"""
Periodic Hamiltonian ODEs
Systems, matrizant integration and the rank-k perturbed system
"""

from .systems import (
    REFERENCE_MATRICES,
    PeriodicHamiltonian,
    TrigTerm,
    example1,
    example2,
    example_context,
    load_trig_system,
    reference_matrix,
    trig_hamiltonian,
)
from .integrate import (
    Trajectory,
    check_semigroup,
    integrate_matrizant,
    integrate_matrizant_rk4,
    monodromy,
    write_trajectory,
)
from .perturbed import (
    PsiReport,
    factored_perturbed_system,
    perturbed_system,
    psi,
    psi_grid,
    psi_report,
)

__all__ = [
    "REFERENCE_MATRICES",
    "PeriodicHamiltonian",
    "TrigTerm",
    "example1",
    "example2",
    "example_context",
    "load_trig_system",
    "reference_matrix",
    "trig_hamiltonian",
    "Trajectory",
    "check_semigroup",
    "integrate_matrizant",
    "integrate_matrizant_rk4",
    "monodromy",
    "write_trajectory",
    "PsiReport",
    "factored_perturbed_system",
    "perturbed_system",
    "psi",
    "psi_grid",
    "psi_report",
]
