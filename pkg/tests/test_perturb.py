import numpy as np
import pytest

from symplectic.errors import SymplecticError
from symplectic.isotropic import IsotropicBasis
from symplectic.matcore import SymplecticContext, is_symplectic
from symplectic.perturb import (
    RankKPerturbation,
    apply,
    factor_rank_one,
    factored_inverse,
    factored_perturbator,
    perturbation_term,
    perturbation_term_three_term,
    perturbator,
    perturbator_from_columns,
    perturbator_inverse,
    perturbator_kernel_dim,
)

from tests.conftest import make_isotropic, make_symplectic


def _random_instances(rng, count=500):
    for trial in range(count):
        n_half = 1 + trial % 6
        ctx = SymplecticContext.block(n_half, sign=-1 if trial % 2 else 1)
        k = 1 + int(rng.integers(n_half))
        scale = float(rng.choice([1.0, 0.1, 0.01, 0.001]))
        yield ctx, RankKPerturbation(make_isotropic(ctx, rng, k), scale)


def test_single_column_example():
    ctx = SymplecticContext.block(1, sign=1)
    p = RankKPerturbation(IsotropicBasis(np.array([[1.0], [0.0]]), ctx))
    np.testing.assert_array_equal(perturbator(p), [[1.0, 1.0], [0.0, 1.0]])
    np.testing.assert_array_equal(perturbator_inverse(p), [[1.0, -1.0], [0.0, 1.0]])
    assert perturbator_kernel_dim(p) == 1


def test_zero_scale_is_identity(ctx, rng):
    p = RankKPerturbation(make_isotropic(ctx, rng, 2), 0.0)
    assert p.is_trivial
    np.testing.assert_array_equal(perturbator(p), np.eye(6))
    assert perturbator_kernel_dim(p) == 6


def test_negative_scale_rejected(ctx, rng):
    with pytest.raises(SymplecticError, match="domain"):
        RankKPerturbation(make_isotropic(ctx, rng, 1), -1.0)


def test_structural_properties(rng):
    for ctx, p in _random_instances(rng):
        I_tilde = perturbator(p)
        assert is_symplectic(I_tilde, ctx, tol=1e-13)[0]
        assert np.linalg.norm(I_tilde @ perturbator_inverse(p) - np.eye(ctx.dim), 2) <= 1e-13
        assert perturbator_kernel_dim(p) == ctx.dim - p.rank
        assert np.linalg.norm(factored_perturbator(p) - I_tilde, 2) <= 1e-13
        assert np.linalg.norm(factored_inverse(p) - perturbator_inverse(p), 2) <= 1e-13


def test_update_is_nilpotent(ctx, rng):
    p = RankKPerturbation(make_isotropic(ctx, rng, 3), 2.0)
    D = perturbator(p) - np.eye(6)
    assert np.linalg.norm(D @ D, 2) <= 1e-14 * np.linalg.norm(p.U_eff, 2) ** 4


def test_factor_rank_one(ctx, rng):
    p = RankKPerturbation(make_isotropic(ctx, rng, 3), 0.5)
    factors = factor_rank_one(p)
    assert [f.rank for f in factors] == [1, 1, 1]
    assert all(f.scale == 0.5 for f in factors)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("scale", [1.0, 0.01])
def test_rank_one_factors_commute(ctx, rng, k, scale):
    p = RankKPerturbation(make_isotropic(ctx, rng, k), scale)
    reversed_product = np.eye(ctx.dim)
    for factor in reversed(factor_rank_one(p)):
        reversed_product = reversed_product @ perturbator(factor)
    assert np.linalg.norm(reversed_product - perturbator(p), 2) <= 1e-13
    assert np.linalg.norm(reversed_product - factored_perturbator(p), 2) <= 1e-13


def test_apply_perturbs_symplectic(ctx, rng):
    W = make_symplectic(ctx, rng)
    p = RankKPerturbation(make_isotropic(ctx, rng, 2))
    W_tilde = apply(p, W)
    np.testing.assert_allclose(W_tilde, perturbator(p) @ W)
    assert is_symplectic(W_tilde, ctx, tol=1e-12)[0]


def test_apply_rejects_non_symplectic(ctx, rng):
    p = RankKPerturbation(make_isotropic(ctx, rng, 1))
    with pytest.raises(SymplecticError, match="not_symplectic"):
        apply(p, 2.0 * np.eye(6))


def test_perturbator_from_columns_accepts_mixed_columns(ctx, rng):
    basis = make_isotropic(ctx, rng, 2)
    U = basis.U @ rng.standard_normal((2, 2))
    assert is_symplectic(perturbator_from_columns(U, ctx), ctx, tol=1e-12)[0]
    with pytest.raises(SymplecticError, match="structure"):
        perturbator_from_columns(np.eye(6)[:, [0, 3]], ctx)


def test_perturbation_term_forms_agree(rng):
    for ctx, p in _random_instances(rng):
        H = rng.standard_normal((ctx.dim, ctx.dim))
        H = H + H.T
        E = perturbation_term(p, H)
        E3 = perturbation_term_three_term(p, H)
        scale = max(1.0, np.linalg.norm(H, 2))
        assert np.linalg.norm(E - E3, 2) <= 1e-13 * scale
        np.testing.assert_array_equal(E, E.T)


def test_perturbation_term_matches_congruence(ctx, rng):
    p = RankKPerturbation(make_isotropic(ctx, rng, 2), 0.3)
    H = rng.standard_normal((6, 6))
    H = H + H.T
    M = perturbator_inverse(p)
    np.testing.assert_allclose(H + perturbation_term(p, H), M.T @ H @ M, atol=1e-12)


def test_perturbation_term_rejects_asymmetric(ctx, rng):
    p = RankKPerturbation(make_isotropic(ctx, rng, 1))
    with pytest.raises(SymplecticError, match="not_symmetric"):
        perturbation_term(p, rng.standard_normal((6, 6)))
