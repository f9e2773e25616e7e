import numpy as np
import pytest

from symplectic.errors import ConfigError, SymplecticError
from symplectic.matcore import (
    SymplecticContext,
    as_mat,
    canonical_frame,
    cayley_minus,
    cayley_plus,
    eig,
    inverse_cayley_minus,
    inverse_cayley_plus,
    is_hamiltonian,
    is_skew_hamiltonian,
    is_symplectic,
    numerical_rank,
    rank_with_margin,
    read_mat_csv,
    solve_with_condition,
    split_isotropy,
    write_mat_csv,
)

from tests.conftest import make_symplectic


def test_block_conventions():
    minus = SymplecticContext.block(2)
    plus = SymplecticContext.block(2, sign=1)
    assert minus.block_sign == -1
    assert plus.block_sign == 1
    np.testing.assert_array_equal(minus.J, -plus.J)
    np.testing.assert_array_equal(minus.J[:2, 2:], -np.eye(2))
    assert minus.dim == 4
    np.testing.assert_array_equal(minus.J_inv, minus.J.T)


def test_context_rejects_bad_forms():
    with pytest.raises(SymplecticError, match="structure"):
        SymplecticContext.from_matrix(np.eye(2))
    with pytest.raises(SymplecticError, match="dimension"):
        SymplecticContext.from_matrix(np.zeros((3, 3)))
    with pytest.raises(SymplecticError, match="domain"):
        SymplecticContext.block(2, sign=2)
    with pytest.raises(SymplecticError, match="structure"):
        # skew but J^2 != -I
        SymplecticContext.from_matrix([[0.0, 2.0], [-2.0, 0.0]])


def test_as_mat_is_read_only_and_finite():
    m = as_mat([[1, 2], [3, 4]])
    assert m.dtype == np.float64
    with pytest.raises(ValueError):
        m[0, 0] = 5.0
    with pytest.raises(SymplecticError, match="not_finite"):
        as_mat([[1.0, np.nan]])
    with pytest.raises(SymplecticError, match="dimension"):
        as_mat([1.0, 2.0])


def test_with_tolerances_keeps_form():
    ctx = SymplecticContext.block(2)
    loose = ctx.with_tolerances(tol_struct=1e-6)
    assert loose.tol_struct == 1e-6
    assert loose.tol_circle == ctx.tol_circle
    np.testing.assert_array_equal(loose.J, ctx.J)


def test_is_symplectic_examples():
    ctx = SymplecticContext.block(1, sign=1)
    ok, defect = is_symplectic(np.eye(2), ctx)
    assert ok and defect == 0.0
    ok, _ = is_symplectic(np.diag([2.0, 0.5]), ctx)
    assert ok
    ok, defect = is_symplectic(np.diag([2.0, 2.0]), ctx)
    assert not ok
    assert defect == pytest.approx(3.0)


def test_is_symplectic_rejects_wrong_shape(ctx):
    with pytest.raises(SymplecticError, match="dimension"):
        is_symplectic(np.eye(4), ctx)


def test_random_symplectic_both_conventions(ctx, rng):
    for _ in range(20):
        W = make_symplectic(ctx, rng)
        ok, defect = is_symplectic(W, ctx)
        assert ok, defect


def test_split_isotropy_of_symplectic(ctx, rng):
    W = make_symplectic(ctx, rng)
    d1, d2 = split_isotropy(W, ctx)
    assert d1 <= 1e-12
    assert d2 <= 1e-12


def test_hamiltonian_predicates(ctx, rng):
    S = rng.standard_normal((6, 6))
    S = S + S.T
    A = ctx.J_inv @ S
    assert is_hamiltonian(A, ctx)[0]
    assert not is_skew_hamiltonian(A, ctx)[0]
    K = rng.standard_normal((6, 6))
    K = K - K.T
    assert is_skew_hamiltonian(ctx.J_inv @ K, ctx)[0]


def test_eig_sorted_with_residuals(rng):
    A = rng.standard_normal((6, 6))
    spectrum = eig(A)
    assert len(spectrum) == 6
    moduli = np.round(np.abs(spectrum.eigenvalues), 12)
    assert np.all(np.diff(moduli) >= 0)
    assert spectrum.residual_bound <= 1e-12 * max(1.0, spectrum.matrix_norm)
    np.testing.assert_allclose(np.linalg.norm(spectrum.eigenvectors, axis=0), 1.0)


def test_eig_rejects_rectangular():
    with pytest.raises(SymplecticError, match="dimension"):
        eig(np.zeros((2, 3)))


def test_rank_and_borderline():
    assert numerical_rank(np.diag([1.0, 1e-3, 0.0]), 1e-10) == 2
    assert numerical_rank(np.zeros((3, 3)), 1e-10) == 0
    rank, borderline = rank_with_margin(np.diag([1.0, 5e-11]), 1e-10)
    assert rank == 1
    assert borderline
    with pytest.raises(SymplecticError, match="dimension"):
        rank_with_margin(np.zeros((0, 0)), 1e-10)


def test_solve_with_condition():
    A = np.array([[2.0, 0.0], [0.0, 4.0]])
    X, cond = solve_with_condition(A, np.eye(2))
    np.testing.assert_allclose(X, np.diag([0.5, 0.25]))
    assert cond == pytest.approx(2.0)
    with pytest.raises(SymplecticError, match="domain"):
        solve_with_condition(np.zeros((2, 2)), np.eye(2))


@pytest.mark.filterwarnings("error")
def test_solve_with_condition_complex_is_quiet():
    A = np.array([[1.0, 1.0j], [1.0j, 1.0]]) / np.sqrt(2.0)
    X, cond = solve_with_condition(A, np.eye(2))
    np.testing.assert_allclose(X, A.conj().T, atol=1e-15)
    assert isinstance(cond, float)
    assert cond == pytest.approx(2.0)


def test_symplectic_determinant_is_unimodular(ctx, rng):
    worst = 0.0
    for _ in range(200):
        W = make_symplectic(ctx, rng)
        worst = max(worst, abs(abs(np.linalg.det(W)) - 1.0))
    assert worst <= 100 * ctx.tol_struct


@pytest.mark.parametrize("size", [2, 5, 12, 20])
def test_eig_residual_bound(rng, size):
    for A in (rng.standard_normal((size, size)), np.triu(rng.standard_normal((size, size)))):
        spectrum = eig(A)
        assert spectrum.residual_bound <= 1e-10 * spectrum.matrix_norm


@pytest.mark.parametrize("n_half", [1, 5, 10])
def test_eig_residual_bound_symplectic(rng, n_half):
    W = make_symplectic(SymplecticContext.block(n_half), rng)
    spectrum = eig(W)
    assert spectrum.residual_bound <= 1e-10 * spectrum.matrix_norm


def _cayley_ready(ctx, rng, count):
    found = []
    while len(found) < count:
        W = make_symplectic(ctx, rng)
        values = np.linalg.eigvals(W)
        if np.min(np.abs(values - 1.0)) > 0.25 and np.min(np.abs(values + 1.0)) > 0.25:
            found.append(W)
    return found


def test_cayley_round_trip_and_structure(ctx, rng):
    for W in _cayley_ready(ctx, rng, 100):
        A = cayley_plus(W, ctx)
        _, defect = is_hamiltonian(A, ctx)
        assert defect <= 1e-12 * max(1.0, np.linalg.norm(A, 2))
        back = inverse_cayley_plus(A, ctx)
        assert np.linalg.norm(back - W, 2) <= 1e-12 * max(1.0, np.linalg.norm(W, 2))

        B = cayley_minus(W, ctx)
        assert is_hamiltonian(B, ctx)[0]
        back = inverse_cayley_minus(B, ctx)
        assert np.linalg.norm(back - W, 2) <= 1e-12 * max(1.0, np.linalg.norm(W, 2))


def test_cayley_inverse_is_symplectic(ctx, rng):
    S = rng.standard_normal((6, 6))
    A = ctx.J_inv @ (S + S.T)
    W = inverse_cayley_plus(A, ctx)
    assert is_symplectic(W, ctx, tol=1e-10 * max(1.0, np.linalg.norm(W, 2) ** 2))[0]


def test_cayley_singular_at_identity(ctx):
    with pytest.raises(SymplecticError, match="singular_cayley"):
        cayley_plus(np.eye(6), ctx)
    with pytest.raises(SymplecticError, match="singular_cayley"):
        cayley_minus(-np.eye(6), ctx)


def test_canonical_frame_block_is_identity(ctx):
    np.testing.assert_array_equal(canonical_frame(ctx), np.eye(6))


def test_canonical_frame_general(general_ctx):
    T = canonical_frame(general_ctx)
    J0 = SymplecticContext.block(2, sign=1).J
    np.testing.assert_allclose(T.T @ T, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(T @ J0 @ T.T, general_ctx.J, atol=1e-10)


def test_mat_csv_files(tmp_path, rng):
    M = rng.standard_normal((4, 3))
    path = write_mat_csv(tmp_path / "m.csv", M)
    assert path.read_text().splitlines()[0] == "4,3"
    np.testing.assert_array_equal(read_mat_csv(path), M)

    bad = tmp_path / "bad.csv"
    bad.write_text("2,2\n1,2\n")
    with pytest.raises(SymplecticError, match="dimension"):
        read_mat_csv(bad)
    with pytest.raises(ConfigError):
        read_mat_csv(tmp_path / "missing.csv")
