import numpy as np
import pytest
from scipy.linalg import subspace_angles

from symplectic.errors import SymplecticError
from symplectic.isotropic import (
    IsotropicBasis,
    TransformKind,
    extend_to_lagrangian,
    givens_symplectic,
    householder_pair,
    is_lagrangian,
    isotropic_from,
    krylov_basis,
    krylov_isotropy_check,
    lagrangian_frame,
    random_orthogonal_symplectic,
    random_skew_hamiltonian,
    reflector,
    trailing_pair,
)
from symplectic.matcore import SymplecticContext, is_symplectic, isotropy_defect

from tests.conftest import make_isotropic, make_symplectic


def _orthogonal_symplectic(E, ctx):
    np.testing.assert_allclose(E.T @ E, np.eye(ctx.dim), atol=1e-13)
    assert is_symplectic(E, ctx, tol=1e-13)[0]


def test_reflector_maps_onto_first_axis(rng):
    y = rng.standard_normal(5)
    v, beta = reflector(y)
    H = np.eye(5) - beta * np.outer(v, v)
    out = H @ y
    assert out[0] == pytest.approx(np.linalg.norm(y))
    np.testing.assert_allclose(out[1:], 0.0, atol=1e-14)


def test_reflector_zero_tail_is_identity():
    v, beta = reflector(np.array([-3.0, 0.0, 0.0]))
    assert beta == 0.0


@pytest.mark.parametrize("half", ["upper", "lower"])
def test_householder_pair_zeroes_segment(ctx, rng, half):
    x = rng.standard_normal(6)
    E = householder_pair(1, x, ctx, half=half)
    assert E.kind is TransformKind.HOUSEHOLDER_PAIR
    _orthogonal_symplectic(E.matrix(), ctx)
    y = E.apply(x)
    segment = y[:3] if half == "upper" else y[3:]
    np.testing.assert_allclose(segment[1:], 0.0, atol=1e-14)


def test_householder_pair_rejects_bad_index(ctx):
    with pytest.raises(SymplecticError, match="dimension"):
        householder_pair(4, np.ones(6), ctx)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_householder_pair_unit_vector_is_identity(ctx, j):
    E = householder_pair(j, np.eye(6)[j - 1], ctx)
    assert E.is_identity
    np.testing.assert_array_equal(E.matrix(), np.eye(6))


@pytest.mark.parametrize("j", [1, 2])
def test_householder_pair_two_entries(ctx, j):
    x = np.eye(6)[j - 1] + np.eye(6)[j]
    y = householder_pair(j, x, ctx).apply(x)
    assert y[j - 1] == pytest.approx(np.sqrt(2.0))
    np.testing.assert_allclose(np.delete(y, j - 1), 0.0, atol=1e-15)
    assert np.linalg.norm(y) == pytest.approx(np.sqrt(2.0))


@pytest.mark.parametrize("sign", [-1, 1])
def test_householder_pair_six_dimensional_half(rng, sign):
    ctx = SymplecticContext.block(6, sign=sign)
    for _ in range(20):
        x = rng.standard_normal(12)
        E = householder_pair(2, x, ctx)
        _orthogonal_symplectic(E.matrix(), ctx)
        y = E.apply(x)
        np.testing.assert_allclose(y[2:6], 0.0, atol=1e-14)
        np.testing.assert_array_equal(y[0], x[0])
        assert np.linalg.norm(y) == pytest.approx(np.linalg.norm(x))


def test_givens_zeroes_second_half_entry(ctx, rng):
    x = rng.standard_normal(6)
    for j in (1, 2, 3):
        G = givens_symplectic(j, x, ctx)
        _orthogonal_symplectic(G.matrix(), ctx)
        assert abs(G.apply(x)[2 + j]) <= 1e-14
        assert -np.pi / 2 <= G.theta < np.pi / 2


def test_givens_edge_angles(ctx):
    x = np.zeros(6)
    assert givens_symplectic(1, x, ctx).is_identity
    x[3] = 1.0
    assert givens_symplectic(1, x, ctx).theta == pytest.approx(-np.pi / 2)


def test_trailing_pair_identity_after_upper_step(ctx, rng):
    x = rng.standard_normal(6)
    x[1:3] = 0.0
    assert trailing_pair(1, x, 3, ctx).is_identity


def test_trailing_pair_folds_onto_next_row(rng):
    ctx = SymplecticContext.block(4, sign=1)
    x = rng.standard_normal(8)
    E = trailing_pair(1, x, 2, ctx)
    _orthogonal_symplectic(E.matrix(), ctx)
    y = E.apply(x)
    assert abs(y[1]) <= 1e-14
    np.testing.assert_allclose(y[3], 0.0, atol=1e-14)


def test_isotropic_from_single_column():
    ctx = SymplecticContext.block(2, sign=1)
    basis, Q = isotropic_from(np.array([[1.0], [0.0], [0.0], [0.0]]), ctx)
    np.testing.assert_allclose(np.abs(basis.U[:, 0]), [1.0, 0.0, 0.0, 0.0], atol=1e-15)
    _orthogonal_symplectic(np.array(Q), ctx)


def test_isotropic_from_rejects_deficient():
    ctx = SymplecticContext.block(2, sign=1)
    A = np.array([[1.0, 2.0], [1.0, 2.0], [0.0, 0.0], [0.0, 0.0]])
    with pytest.raises(SymplecticError, match="deficient_input"):
        isotropic_from(A, ctx)


def test_isotropic_from_empty_and_too_wide(ctx):
    basis, Q = isotropic_from(np.zeros((6, 0)), ctx)
    assert basis.k == 0
    np.testing.assert_array_equal(Q, np.eye(6))
    with pytest.raises(SymplecticError, match="dimension"):
        isotropic_from(np.ones((6, 4)), ctx)


@pytest.mark.parametrize("sign", [-1, 1])
def test_isotropic_from_random_instances(rng, sign):
    for trial in range(500):
        n_half = 1 + trial % 6
        ctx = SymplecticContext.block(n_half, sign=sign)
        k = 1 + int(rng.integers(n_half))
        basis, Q = isotropic_from(rng.standard_normal((ctx.dim, k)), ctx)
        orth, iso = basis.defects()
        assert orth <= 1e-12
        assert iso <= 1e-12
        np.testing.assert_allclose(np.array(Q)[:, :k], basis.U, atol=1e-14)
        assert is_symplectic(Q, ctx, tol=1e-12)[0]


def test_isotropic_from_general_form(general_ctx, rng):
    basis, Q = isotropic_from(rng.standard_normal((4, 2)), general_ctx)
    orth, iso = basis.defects()
    assert orth <= 1e-12
    assert iso <= 1e-12
    assert is_symplectic(Q, general_ctx, tol=1e-12)[0]


def test_basis_validation(ctx):
    with pytest.raises(SymplecticError, match="structure"):
        IsotropicBasis(np.eye(6)[:, [0, 3]], ctx)
    with pytest.raises(SymplecticError, match="dimension"):
        IsotropicBasis(np.eye(6)[:, :4], ctx)


def test_extend_to_lagrangian_keeps_columns(ctx, rng):
    B = make_isotropic(ctx, rng, 1)
    L = extend_to_lagrangian(B)
    assert L.k == 3
    np.testing.assert_array_equal(L.U[:, :1], B.U)
    assert is_lagrangian(L.U, ctx)


def test_extend_first_axis_avoids_its_partner(ctx):
    e1 = np.eye(6)[:, 0]
    L = extend_to_lagrangian(IsotropicBasis(e1[:, None], ctx))
    assert L.k == 3
    np.testing.assert_allclose(L.U.T @ (ctx.J @ e1), 0.0, atol=1e-14)
    assert is_lagrangian(L.U, ctx)


def test_extend_full_basis_is_unchanged(ctx, rng):
    L = make_isotropic(ctx, rng, 3)
    assert extend_to_lagrangian(L) is L


@pytest.mark.parametrize("sign", [-1, 1])
def test_extend_contains_original_span(rng, sign):
    ctx = SymplecticContext.block(5, sign=sign)
    for _ in range(20):
        B = make_isotropic(ctx, rng, 1)
        L = extend_to_lagrangian(B)
        orth, iso = L.defects()
        assert orth <= 1e-13
        assert iso <= 1e-13
        assert L.k == 5
        assert np.max(subspace_angles(B.U, L.U)) <= 1e-10


def test_first_half_of_symplectic_is_lagrangian(ctx, rng):
    for _ in range(20):
        W = make_symplectic(ctx, rng)
        assert is_lagrangian(W[:, :3], ctx)
        assert is_lagrangian(W[:, 3:], ctx)


def test_extend_empty_basis(ctx):
    L = extend_to_lagrangian(IsotropicBasis(np.zeros((6, 0)), ctx))
    assert is_lagrangian(L.U, ctx)


def test_is_lagrangian_needs_full_rank(ctx):
    assert not is_lagrangian(np.zeros((6, 3)), ctx)
    assert is_lagrangian(np.eye(6)[:, :3], ctx)


def test_lagrangian_frame_is_orthogonal_symplectic(ctx, rng):
    L = make_isotropic(ctx, rng, 3)
    W = lagrangian_frame(L)
    _orthogonal_symplectic(np.array(W), ctx)
    np.testing.assert_array_equal(W[:, :3], L.U)


def test_lagrangian_frame_needs_full_basis(ctx, rng):
    with pytest.raises(SymplecticError, match="dimension"):
        lagrangian_frame(make_isotropic(ctx, rng, 2))


def test_random_orthogonal_symplectic(ctx, rng):
    Q = random_orthogonal_symplectic(ctx, rng)
    _orthogonal_symplectic(np.array(Q), ctx)


def test_krylov_subspaces_are_isotropic(ctx, rng):
    for _ in range(100):
        S = random_skew_hamiltonian(ctx, rng)
        u = rng.standard_normal(6)
        assert krylov_isotropy_check(S, u, 3, ctx)


def test_krylov_basis_orthonormal(rng):
    S = rng.standard_normal((6, 6))
    K = krylov_basis(S, rng.standard_normal(6), 4)
    np.testing.assert_allclose(K.T @ K, np.eye(K.shape[1]), atol=1e-12)


def test_krylov_stops_on_invariant_subspace(ctx):
    K = krylov_basis(np.eye(6), np.ones(6), 3)
    assert K.shape == (6, 1)


def test_krylov_rejects_non_skew_hamiltonian(ctx, rng):
    S = rng.standard_normal((6, 6))
    S = ctx.J_inv @ (S + S.T)
    with pytest.raises(SymplecticError, match="structure"):
        krylov_isotropy_check(S, np.ones(6), 2, ctx)


def test_krylov_general_dimension_bound(ctx, rng):
    # a skew-Hamiltonian Krylov space can never exceed N
    S = random_skew_hamiltonian(ctx, rng)
    K = krylov_basis(S, rng.standard_normal(6), 6)
    assert K.shape[1] <= 3
    assert isotropy_defect(K, ctx) <= 1e-10
