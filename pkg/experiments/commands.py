"""
Command Handlers
Experiment runners behind the CLI subcommands
"""

import asyncio
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from symplectic import settings
from symplectic.errors import ConfigError, EigenSolverError, IntegrationError, SymplecticError
from symplectic.isotropic import isotropic_from
from symplectic.jordan import check_thr, half_dimension, symplectic_with_structure
from symplectic.matcore import SymplecticContext, read_mat_csv, write_mat_csv
from symplectic.ode import integrate_matrizant, perturbed_system, psi_grid, psi_report, reference_matrix
from symplectic.perturb import RankKPerturbation
from symplectic.stability import analyze, report_to_dict, report_to_row

from experiments.config import ExperimentConfig, build_basis, build_system, parse_structure
from experiments.utils import ensure_dir, scale_label, write_columns_csv, write_json, write_rows_csv

logger = logging.getLogger("experiments")

Job = Tuple[str, Callable[[], Any]]


def get_commands_list() -> List[str]:
    """Get list of available subcommands"""
    return [
        "isotropic - Isotropic basis U and orthogonal symplectic Q from a CSV matrix",
        "psi - Psi(t) curves of the perturbed system, one CSV per scale",
        "table - Strong-stability table, one row per scale plus the unperturbed row",
        "jordan - Jordan structure predictions for a generated symplectic matrix",
        "example1 - Full reproduction (psi + table, ranks 2 and 3) for the first test system",
        "example2 - Full reproduction (psi + table, ranks 2 and 3) for the second test system",
    ]


async def run_jobs(jobs: List[Job], limit: Optional[int] = None) -> List[Tuple[str, Any]]:
    """
    Run blocking jobs in the default executor, `limit` at a time.

    Returns:
        (label, result) in job order; a failed job yields its SymplecticError
    """
    loop = asyncio.get_running_loop()
    limit = max(1, limit or settings.CONCURRENCY)
    results: List[Tuple[str, Any]] = []
    total = len(jobs)
    logger.info(f"🚀 Running {total} jobs ({limit} concurrent)")

    for batch_num, i in enumerate(range(0, total, limit), 1):
        batch = jobs[i:i + limit]
        batch_start = time.time()
        outcomes = await asyncio.gather(
            *[loop.run_in_executor(None, fn) for _, fn in batch],
            return_exceptions=True,
        )
        logger.info(f"✅ Batch {batch_num} completed in {time.time() - batch_start:.2f}s")
        for (label, _), outcome in zip(batch, outcomes):
            if isinstance(outcome, SymplecticError):
                logger.error(f"❌ Job {label} failed: {outcome}")
            elif isinstance(outcome, BaseException):
                raise outcome
            results.append((label, outcome))
    return results


def _write_run(out: Path, command: str, config: ExperimentConfig, extra: Optional[Dict[str, Any]] = None,
               name: str = "run.json") -> Path:
    record = {"command": command, "seed": config.seed, "config": config.to_dict()}
    if extra:
        record.update(extra)
    return write_json(out / name, record)


def _numerical(label: str, fn: Callable[[], Any]) -> Callable[[], Any]:
    """Raise LAPACK and floating-point failures of `fn` as SymplecticError"""
    def run():
        try:
            return fn()
        except np.linalg.LinAlgError as e:
            raise EigenSolverError(f"{label}: {e}") from e
        except (ValueError, ArithmeticError) as e:
            raise IntegrationError("blowup", f"{label}: {e}") from e
    return run


def _error_entry(error: SymplecticError) -> Dict[str, Any]:
    return {"status": "error", "code": error.code, "reason": error.message}


def run_isotropic(config: ExperimentConfig) -> List[Path]:
    """U.csv and Q.csv for the matrix in config.matrix"""
    if config.matrix is None:
        raise ConfigError("isotropic needs --matrix")
    A = read_mat_csv(config.matrix)
    if A.shape[0] % 2:
        raise ConfigError(f"matrix must have an even number of rows, got {A.shape[0]}")
    ctx = SymplecticContext.block(A.shape[0] // 2, sign=-1)
    basis, Q = _numerical("isotropic", lambda: isotropic_from(A, ctx))()
    out = ensure_dir(config.output_dir)
    orth, iso = basis.defects()
    logger.info(f"✅ Isotropic basis: orthonormality {orth:.2e}, isotropy {iso:.2e}")
    return [
        write_mat_csv(out / "U.csv", basis.U),
        write_mat_csv(out / "Q.csv", Q),
        _write_run(out, "isotropic", config, {"orthonormality_defect": orth, "isotropy_defect": iso}),
    ]


def run_psi(config: ExperimentConfig, run_file: str = "run.json") -> List[Path]:
    """psi_<scale>.csv per scale plus psi_summary.json"""
    system, ctx = build_system(config)
    basis = build_basis(config, system, ctx)
    if basis is None:
        raise ConfigError("psi needs a perturbation (random or reference)")
    out = ensure_dir(config.output_dir)
    grid = psi_grid(system, config.psi_points)
    tol = config.integrator_tol
    logger.info(f"🚀 Psi run for {system.name}, rank {basis.k}, scales {list(config.scales)}")

    def job(scale: float) -> Callable[[], Any]:
        return _numerical(
            f"psi {scale_label(scale)}",
            lambda: psi_report(system, RankKPerturbation(basis, scale), grid, ctx, rtol=tol, atol=tol),
        )

    results = asyncio.run(run_jobs([(scale_label(s), job(s)) for s in config.scales]))

    paths = [write_mat_csv(out / "U.csv", basis.U)]
    summary: Dict[str, Any] = {}
    for label, result in results:
        if isinstance(result, SymplecticError):
            summary[label] = _error_entry(result)
            continue
        paths.append(write_columns_csv(out / f"psi_{label}.csv", {"t": result.times, "psi": result.values}))
        summary[label] = {"status": "ok", **result.to_dict()}
    paths.append(write_json(out / "psi_summary.json", {"system": system.name, "rank": basis.k, "scales": summary}))
    paths.append(_write_run(out, "psi", config, name=run_file))
    return paths


def _table_scales(config: ExperimentConfig, has_basis: bool) -> List[float]:
    scales = set(config.scales) if has_basis else set()
    return sorted(scales | {0.0}, reverse=True)


def run_table(config: ExperimentConfig, run_file: str = "run.json") -> List[Path]:
    """table.csv (one row per scale, unperturbed last) and table.json"""
    system, ctx = build_system(config)
    basis = build_basis(config, system, ctx)
    out = ensure_dir(config.output_dir)
    tol = config.integrator_tol
    scales = _table_scales(config, basis is not None)
    logger.info(f"🚀 Stability table for {system.name}, scales {scales}")

    def job(scale: float) -> Callable[[], Any]:
        def analyze_scale():
            if basis is None or scale == 0.0:
                pert, initial = system, np.eye(ctx.dim)
            else:
                pert, initial = perturbed_system(system, RankKPerturbation(basis, scale))
            traj = integrate_matrizant(pert, initial, system.period, ctx, rtol=tol, atol=tol)
            return analyze(traj.final, ctx, config.n_max)
        return _numerical(f"table {scale_label(scale)}", analyze_scale)

    results = asyncio.run(run_jobs([(scale_label(s), job(s)) for s in scales]))

    rows: List[Dict[str, Any]] = []
    reports: Dict[str, Any] = {}
    for scale, (label, result) in zip(scales, results):
        if isinstance(result, SymplecticError):
            rows.append({"scale": scale, "verdict": "-"})
            reports[label] = _error_entry(result)
            continue
        rows.append({"scale": scale, **report_to_row(result)})
        reports[label] = report_to_dict(result)

    paths = [
        write_rows_csv(out / "table.csv", rows),
        write_json(out / "table.json", {"system": system.name, "n_max": config.n_max, "rows": reports}),
        _write_run(out, "table", config, name=run_file),
    ]
    if basis is not None:
        paths.append(write_mat_csv(out / "U.csv", basis.U))
    return paths


def run_jordan(config: ExperimentConfig) -> List[Path]:
    """thr.json for the generated matrix with config.structure"""
    structure = parse_structure(config.structure)
    try:
        n_half = half_dimension(structure)
        ctx = SymplecticContext.block(n_half, sign=1)
        W = symplectic_with_structure(structure, ctx)
    except SymplecticError as e:
        if e.code == "structure_unrealizable":
            raise ConfigError(f"structure {config.structure!r} is not realizable: {e.message}") from e
        raise
    report = _numerical(
        "jordan", lambda: check_thr(W, config.lam, config.jordan_k, config.trials, ctx, seed=config.seed)
    )()
    out = ensure_dir(config.output_dir)
    data = {"structure": config.structure, **report.to_dict()}
    return [write_json(out / "thr.json", data), _write_run(out, "jordan", config)]


def run_example(config: ExperimentConfig) -> List[Path]:
    """psi and table runs for ranks 2 and 3 under <output_dir>/rank<k>"""
    paths: List[Path] = []
    if config.perturbation == "reference":
        system, _ = build_system(config)
        if reference_matrix(system) is None:
            logger.warning(f"⚠️ No reference matrix for {system.name} {system.params}; using seed {config.seed}")
            config = config.with_overrides(perturbation="random")
    for rank in (2, 3):
        sub = config.with_overrides(rank=rank, output_dir=Path(config.output_dir) / f"rank{rank}")
        paths.extend(run_psi(sub, run_file="psi_run.json"))
        paths.extend(run_table(sub, run_file="table_run.json"))
    paths.append(_write_run(Path(config.output_dir), config.system, config))
    return paths
