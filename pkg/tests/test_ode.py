import numpy as np
import pandas as pd
import pytest
import scipy.linalg

from symplectic.errors import ConfigError, SymplecticError
from symplectic.matcore import SymplecticContext, write_mat_csv
from symplectic.ode import (
    PeriodicHamiltonian,
    TrigTerm,
    check_semigroup,
    example1,
    example2,
    example_context,
    factored_perturbed_system,
    integrate_matrizant,
    integrate_matrizant_rk4,
    load_trig_system,
    monodromy,
    perturbed_system,
    psi,
    psi_grid,
    psi_report,
    reference_matrix,
    trig_hamiltonian,
    write_trajectory,
)
from symplectic.perturb import RankKPerturbation, perturbation_term

from tests.conftest import make_isotropic


def constant_system(n_half: int, period: float = 2 * np.pi) -> PeriodicHamiltonian:
    eye = np.eye(2 * n_half)
    return PeriodicHamiltonian(dim=2 * n_half, period=period, evaluator=lambda t: eye, name="constant")


@pytest.fixture
def ctx6():
    return example_context()


def test_constant_system_closed_form():
    ctx = SymplecticContext.block(1, sign=-1)
    traj = integrate_matrizant(constant_system(1), np.eye(2), np.pi / 2, ctx)
    np.testing.assert_allclose(traj.final, [[0.0, 1.0], [-1.0, 0.0]], atol=1e-10)
    np.testing.assert_array_equal(traj.states[0], np.eye(2))
    assert traj.times[0] == 0.0 and traj.times[-1] == pytest.approx(np.pi / 2)


def test_constant_system_full_turn():
    ctx = SymplecticContext.block(1, sign=-1)
    np.testing.assert_allclose(monodromy(constant_system(1), ctx), np.eye(2), atol=1e-9)


def test_constant_system_matches_expm():
    ctx = SymplecticContext.block(2, sign=1)
    traj = integrate_matrizant(constant_system(2), np.eye(4), 1.3, ctx)
    np.testing.assert_allclose(traj.final, scipy.linalg.expm(1.3 * ctx.J_inv), atol=1e-10)


def test_trajectory_grid_samples():
    ctx = SymplecticContext.block(1, sign=-1)
    traj = integrate_matrizant(constant_system(1), np.eye(2), 1.0, ctx, grid=[0.25, 0.5])
    np.testing.assert_allclose(traj.times, [0.0, 0.25, 0.5, 1.0])
    assert len(traj) == 4
    assert traj.max_drift is not None and traj.max_drift <= 1e-10


def test_integrate_argument_errors(ctx6):
    with pytest.raises(SymplecticError, match="domain"):
        integrate_matrizant(example1(2, 4), np.eye(6), 0.0, ctx6)
    with pytest.raises(SymplecticError, match="dimension"):
        integrate_matrizant(constant_system(1), np.eye(6), 1.0, ctx6)
    with pytest.raises(SymplecticError, match="domain"):
        integrate_matrizant(constant_system(3), np.eye(6), 1.0, ctx6, grid=[2.0])


@pytest.mark.parametrize("system", [example1(2, 4), example2(2, 2)], ids=["example1", "example2"])
def test_systems_are_symmetric_and_periodic(system, ctx6):
    system.validate(ctx6, samples=64)
    assert system.dim == 6


def test_example_periods_and_params():
    assert example1(2, 4).period == pytest.approx(2 * np.pi / np.sqrt(7))
    assert example2(18.95, 2).period == pytest.approx(2 * np.pi / 7)
    assert example2(18.95, 2).params == {"a": 18.95, "b": 2.0}


def test_example1_coefficient_entries():
    H = example1(2, 4)(0.0)
    assert H[0, 0] == pytest.approx(6.0)
    assert H[0, 2] == pytest.approx(4.0)
    assert H[1, 2] == pytest.approx(0.0)
    np.testing.assert_array_equal(H[3:, 3:], np.eye(3))


def test_example1_decoupled_multipliers(ctx6):
    system = example1(0.0, 0.0)
    values = np.linalg.eigvals(monodromy(system, ctx6))
    expected = np.concatenate([np.exp(s * 1j * np.sqrt([4.0, 3.0, 2.0]) * system.period) for s in (1, -1)])
    for value in expected:
        assert np.min(np.abs(values - value)) <= 1e-8


@pytest.mark.parametrize("system", [example1(2, 4), example2(2, 2)], ids=["example1", "example2"])
def test_drift_and_semigroup(system, ctx6):
    traj = integrate_matrizant(system, np.eye(6), system.period, ctx6, grid=psi_grid(system, 50))
    assert traj.max_drift <= 1e-9
    defects = check_semigroup(system, ctx6)
    assert set(defects) == {0.25, 0.5}
    assert max(defects.values()) <= 1e-8


def test_example1_stable_multipliers_on_circle(ctx6):
    values = np.linalg.eigvals(monodromy(example1(2, 4), ctx6))
    np.testing.assert_allclose(np.abs(values), 1.0, atol=1e-8)


def test_example1_unstable_multipliers(ctx6):
    values = np.linalg.eigvals(monodromy(example1(15, 4), ctx6))
    assert np.sum(np.abs(values) < 1 - 1e-6) == 2
    assert np.sum(np.abs(values) > 1 + 1e-6) == 2


@pytest.mark.slow
def test_rk4_cross_check(ctx6):
    system = example1(2, 4)
    adaptive = monodromy(system, ctx6)
    fixed = integrate_matrizant_rk4(system, np.eye(6), system.period, ctx6)
    assert fixed.method == "RK4"
    assert np.linalg.norm(fixed.final - adaptive, 2) <= 1e-8 * np.linalg.norm(adaptive, 2)


def test_rk4_short_run():
    ctx = SymplecticContext.block(1, sign=-1)
    traj = integrate_matrizant_rk4(constant_system(1), np.eye(2), np.pi / 2, ctx, steps=2000)
    np.testing.assert_allclose(traj.final, [[0.0, 1.0], [-1.0, 0.0]], atol=1e-10)


def test_write_trajectory(tmp_path):
    ctx = SymplecticContext.block(1, sign=-1)
    traj = integrate_matrizant(constant_system(1), np.eye(2), 1.0, ctx, grid=[0.5])
    frame = pd.read_csv(write_trajectory(tmp_path / "traj.csv", traj))
    assert list(frame.columns) == ["t", "x_1_1", "x_1_2", "x_2_1", "x_2_2"]
    assert len(frame) == 3
    assert frame["x_1_1"].iloc[0] == 1.0


def test_trig_system_from_file(tmp_path):
    write_mat_csv(tmp_path / "h0.csv", np.eye(2))
    write_mat_csv(tmp_path / "h1.csv", np.array([[1.0, 0.5], [0.5, 0.0]]))
    description = tmp_path / "system.env"
    description.write_text("period=2.0\nconstant=h0.csv\nterm_1=h1.csv,1,cos\n")
    system = load_trig_system(description)
    assert system.period == 2.0
    np.testing.assert_allclose(system(0.0), [[2.0, 0.5], [0.5, 1.0]])
    np.testing.assert_allclose(system(0.5), np.eye(2), atol=1e-15)
    system.validate(SymplecticContext.block(1))


def test_trig_system_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_trig_system(tmp_path / "missing.env")
    description = tmp_path / "bad.env"
    description.write_text("constant=h0.csv\n")
    with pytest.raises(ConfigError):
        load_trig_system(description)
    with pytest.raises(SymplecticError, match="not_symmetric"):
        trig_hamiltonian([TrigTerm(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)], np.eye(2), 1.0)
    with pytest.raises(SymplecticError, match="domain"):
        TrigTerm(np.eye(2), 1.0, "tan")


def test_reference_matrix_lookup():
    assert reference_matrix(example1(2, 4)).shape == (6, 3)
    assert reference_matrix(example2(18.95, 2)).shape == (6, 3)
    assert reference_matrix(example1(3, 4)) is None


def test_perturbed_system_trivial(ctx6, rng):
    system = example1(2, 4)
    p = RankKPerturbation(make_isotropic(ctx6, rng, 2), 0.0)
    same, initial = perturbed_system(system, p)
    assert same is system
    np.testing.assert_array_equal(initial, np.eye(6))


def test_perturbed_coefficient_matches_term(ctx6, rng):
    system = example1(2, 4)
    p = RankKPerturbation(make_isotropic(ctx6, rng, 2), 1.0)
    pert, initial = perturbed_system(system, p)
    factored, factored_initial = factored_perturbed_system(system, p)
    np.testing.assert_allclose(factored_initial, initial, atol=1e-13)
    for t in np.linspace(0.0, system.period, 9):
        H = system(t)
        assert np.linalg.norm(pert(t) - H - perturbation_term(p, H), 2) <= 1e-13 * np.linalg.norm(H, 2)
        assert np.linalg.norm(factored(t) - pert(t), 2) <= 1e-12 * np.linalg.norm(H, 2)
    pert.validate(ctx6, samples=64)


def test_perturbed_system_dimension_mismatch(rng):
    ctx = SymplecticContext.block(2)
    p = RankKPerturbation(make_isotropic(ctx, rng, 1))
    with pytest.raises(SymplecticError, match="dimension"):
        perturbed_system(example1(2, 4), p)


def test_psi_zero_scale(ctx6, rng):
    system = example2(2, 2)
    p = RankKPerturbation(make_isotropic(ctx6, rng, 3), 0.0)
    values = psi(system, p, psi_grid(system, 20), ctx6)
    assert values == [0.0] * 20


def test_psi_grid_bounds(ctx6, rng):
    system = example2(2, 2)
    p = RankKPerturbation(make_isotropic(ctx6, rng, 1))
    with pytest.raises(SymplecticError, match="domain"):
        psi(system, p, [0.0, 2 * system.period], ctx6)


@pytest.mark.slow
@pytest.mark.parametrize("system", [example1(2, 4), example2(2, 2)], ids=["example1", "example2"])
@pytest.mark.parametrize("rank", [2, 3])
def test_psi_within_tolerance_bound(system, rank, ctx6):
    basis = make_isotropic(ctx6, np.random.default_rng(7), rank)
    grid = psi_grid(system, 100)
    for scale in (1.0, 0.1, 0.01, 0.001):
        report = psi_report(system, RankKPerturbation(basis, scale), grid, ctx6)
        assert report.within_bound, report.to_dict()
        assert report.values.shape == (100,)


@pytest.mark.slow
def test_psi_tracks_integrator_tolerance(ctx6):
    system = example1(2, 4)
    p = RankKPerturbation(make_isotropic(ctx6, np.random.default_rng(11), 2), 1.0)
    grid = psi_grid(system, 50)
    loose = psi_report(system, p, grid, ctx6, rtol=1e-8, atol=1e-8)
    tight = psi_report(system, p, grid, ctx6, rtol=1e-9, atol=1e-9)
    assert loose.max_psi > 0
    assert tight.max_psi * 5 <= loose.max_psi
