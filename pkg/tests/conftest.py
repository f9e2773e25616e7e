"""
Shared fixtures: seeded generators, contexts for both J conventions and
random structured matrices
"""

import numpy as np
import pytest

from symplectic.isotropic import isotropic_from, random_orthogonal_symplectic
from symplectic.matcore import SymplecticContext


def make_symplectic(ctx: SymplecticContext, rng: np.random.Generator, spread: float = 2.0) -> np.ndarray:
    """Q1 diag(D, D^-1) Q2 with orthogonal symplectic Q1, Q2 and D in [1/spread, spread]"""
    d = np.exp(rng.uniform(-np.log(spread), np.log(spread), ctx.n_half))
    core = np.diag(np.concatenate([d, 1.0 / d]))
    return random_orthogonal_symplectic(ctx, rng) @ core @ random_orthogonal_symplectic(ctx, rng)


def make_isotropic(ctx: SymplecticContext, rng: np.random.Generator, k: int):
    basis, _ = isotropic_from(rng.standard_normal((ctx.dim, ctx.n_half)), ctx)
    return basis.columns(k)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[-1, 1], ids=["sign-", "sign+"])
def ctx(request):
    return SymplecticContext.block(3, sign=request.param)


@pytest.fixture
def small_ctx():
    return SymplecticContext.block(2, sign=1)


@pytest.fixture
def general_ctx(rng):
    """J = R J0 R^T for a random orthogonal R (not a block form)"""
    J0 = SymplecticContext.block(2, sign=1).J
    R, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    J = R @ J0 @ R.T
    J = 0.5 * (J - J.T)
    return SymplecticContext.from_matrix(J)
