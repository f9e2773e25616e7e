"""
Structured Perturbation
Rank-k perturbators, their rank-one factors and the induced Hamiltonian term
"""

from .rank_k import (
    RankKPerturbation,
    apply,
    factor_rank_one,
    factored_inverse,
    factored_perturbator,
    perturbator,
    perturbator_from_columns,
    perturbator_inverse,
    perturbator_kernel_dim,
)
from .hamiltonian_term import perturbation_term, perturbation_term_three_term

__all__ = [
    "RankKPerturbation",
    "apply",
    "factor_rank_one",
    "factored_inverse",
    "factored_perturbator",
    "perturbator",
    "perturbator_from_columns",
    "perturbator_inverse",
    "perturbator_kernel_dim",
    "perturbation_term",
    "perturbation_term_three_term",
]
