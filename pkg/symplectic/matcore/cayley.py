"""
Cayley Maps
Bridges between symplectic and Hamiltonian matrices
"""

import logging

import numpy as np

from symplectic.errors import SymplecticError

from .context import Mat, SymplecticContext, as_mat
from .spectra import eig, solve_with_condition

logger = logging.getLogger("symplectic")


def _distance_to(W: Mat, target: float) -> float:
    spectrum = eig(W)
    return float(np.min(np.abs(spectrum.eigenvalues - target)))


def cayley_plus(W: Mat, ctx: SymplecticContext) -> Mat:
    """
    (I - W)^{-1} (I + W); Hamiltonian when W is symplectic.

    Raises:
        SymplecticError: code singular_cayley when 1 is (numerically) an eigenvalue
    """
    W = ctx.check_square(W, "W")
    gap = _distance_to(W, 1.0)
    if gap <= ctx.tol_circle:
        raise SymplecticError("singular_cayley", f"1 is an eigenvalue of W (distance {gap:.2e})")
    eye = np.eye(ctx.dim)
    A, _ = solve_with_condition(eye - W, eye + W)
    return as_mat(A, "cayley_plus")


def cayley_minus(W: Mat, ctx: SymplecticContext) -> Mat:
    """(I + W)^{-1} (I - W); requires -1 outside the spectrum"""
    W = ctx.check_square(W, "W")
    gap = _distance_to(W, -1.0)
    if gap <= ctx.tol_circle:
        raise SymplecticError("singular_cayley", f"-1 is an eigenvalue of W (distance {gap:.2e})")
    eye = np.eye(ctx.dim)
    B, _ = solve_with_condition(eye + W, eye - W)
    return as_mat(B, "cayley_minus")


def inverse_cayley_plus(A: Mat, ctx: SymplecticContext) -> Mat:
    """(A - I)(A + I)^{-1}, the inverse of cayley_plus"""
    A = ctx.check_square(A, "A")
    eye = np.eye(ctx.dim)
    gap = _distance_to(A, -1.0)
    if gap <= ctx.tol_circle:
        raise SymplecticError("singular_cayley", f"-1 is an eigenvalue of A (distance {gap:.2e})")
    Xt, _ = solve_with_condition((A + eye).T, (A - eye).T)
    return as_mat(Xt.T, "inverse_cayley_plus")


def inverse_cayley_minus(B: Mat, ctx: SymplecticContext) -> Mat:
    """(I - B)(I + B)^{-1}, the inverse of cayley_minus"""
    B = ctx.check_square(B, "B")
    eye = np.eye(ctx.dim)
    gap = _distance_to(B, -1.0)
    if gap <= ctx.tol_circle:
        raise SymplecticError("singular_cayley", f"-1 is an eigenvalue of B (distance {gap:.2e})")
    Xt, _ = solve_with_condition((B + eye).T, (eye - B).T)
    return as_mat(Xt.T, "inverse_cayley_minus")
