"""
Perturbation Term
Change of the Hamiltonian coefficient under the rank-k perturbation
"""

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.matcore import Mat, as_mat, norm2, symmetrize

from .rank_k import RankKPerturbation, perturbator_inverse


def _check_symmetric(H: np.ndarray, p: RankKPerturbation) -> Mat:
    H = p.ctx.check_square(H, "H")
    asym = norm2(H - H.T)
    if asym > p.ctx.tol_struct * max(1.0, norm2(H)):
        raise SymplecticError("not_symmetric", f"H is not symmetric (defect {asym:.3e})")
    return H


def perturbation_term(p: RankKPerturbation, H: Mat) -> Mat:
    """
    E = (I - U U^T J)^T H (I - U U^T J) - H

    The perturbed system carries H + E in place of H.
    """
    H = _check_symmetric(H, p)
    M = perturbator_inverse(p)
    return as_mat(symmetrize(M.T @ H @ M - H), "E")


def perturbation_term_three_term(p: RankKPerturbation, H: Mat) -> Mat:
    """
    Expanded form C^T + C + D^T H D with C = J U U^T H and D = U U^T J.

    Agrees with perturbation_term because J^T = -J.
    """
    H = _check_symmetric(H, p)
    U = p.U_eff
    J = p.ctx.J
    C = J @ U @ (U.T @ H)
    D = U @ (U.T @ J)
    return as_mat(C.T + C + D.T @ H @ D, "E3")
