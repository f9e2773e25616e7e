"""
Generic Rank-k Jordan Changes
Predicted Segre characteristic after a generic rank-k structured
perturbation, and a randomized checker comparing it with what is observed
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from symplectic.errors import SymplecticError
from symplectic.isotropic import isotropic_from
from symplectic.matcore import Mat, SymplecticContext, is_symplectic, norm2
from symplectic.perturb import perturbator_from_columns

from .segre import SegreCharacteristic, segre_at, spectrum_structure, total_multiplicity

logger = logging.getLogger("symplectic")


def predict_segre(segre: SegreCharacteristic, k: int, identity: bool = False) -> Tuple[str, SegreCharacteristic]:
    """
    Segre characteristic at the same eigenvalue after a generic rank-k
    perturbation drawn from one Lagrangian subspace.

    Off {1, -1} and for even block sizes, k blocks are removed, largest
    level first. At 1 or -1 an odd level of l blocks of size n that is
    reached with r < l remaining columns gains one block of size n+1 and
    loses r+1 blocks when r is odd; when r is even it just loses r blocks.
    `identity` selects the exact law for W = I: k blocks of size 2 and
    2N - 2k blocks of size 1.

    Returns:
        (case label, predicted characteristic); labels are "1", "2a",
        "2b", "2b-even", "exhausted" and "identity"
    """
    lam = complex(segre.eigenvalue)
    if k < 0:
        raise SymplecticError("domain", f"k must be >= 0, got {k}")
    case, generic = _generic_law(segre, lam, k)
    if not identity:
        return case, generic
    total = segre.algebraic_multiplicity
    if 2 * k > total:
        raise SymplecticError("domain", f"rank {k} too large for dimension {total}")
    exact = SegreCharacteristic.from_blocks(lam, [2] * k + [1] * (total - 2 * k))
    if exact.sizes == generic.sizes:
        return case, generic
    return "identity", exact


def _generic_law(segre: SegreCharacteristic, lam: complex, k: int) -> Tuple[str, SegreCharacteristic]:
    unimodular = lam.imag == 0 and (abs(lam.real - 1.0) < 1e-12 or abs(lam.real + 1.0) < 1e-12)
    remaining = k
    case = "1" if not unimodular else "2a"
    kept: Counter = Counter()
    for n, l in segre.sizes:
        if remaining == 0:
            kept[n] += l
            continue
        if not unimodular or n % 2 == 0:
            taken = min(remaining, l)
            remaining -= taken
            kept[n] += l - taken
            case = "1" if not unimodular else "2a"
            continue
        if remaining >= l:
            remaining -= l
            case = "2b-even"
            continue
        if remaining % 2:
            kept[n + 1] += 1
            kept[n] += l - (remaining + 1)
            case = "2b"
        else:
            kept[n] += l - remaining
            case = "2b-even"
        remaining = 0
    if remaining:
        case = "exhausted"
    blocks = [n for n, count in kept.items() for _ in range(count)]
    return case, SegreCharacteristic.from_blocks(lam, blocks)


@dataclass
class ThrReport:
    case: str
    predicted: SegreCharacteristic
    observed_histogram: Dict[str, int]
    match_fraction: float
    borderline_count: int
    seed: int
    trials: int
    matches: int
    multiplicity_conserved: int
    eigenvalue: complex = 0.0
    k: int = 0
    failures: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "predicted": [list(s) for s in self.predicted.sizes],
            "observed_histogram": dict(sorted(self.observed_histogram.items())),
            "match_fraction": self.match_fraction,
            "borderline_count": self.borderline_count,
            "seed": self.seed,
            "lambda": complex(self.eigenvalue).real,
            "k": self.k,
            "trials": self.trials,
            "matches": self.matches,
            "multiplicity_conserved": self.multiplicity_conserved,
        }


def _sizes_key(segre: SegreCharacteristic) -> str:
    return ";".join(f"{n}x{l}" for n, l in segre.sizes) or "empty"


def random_lagrangian_columns(ctx: SymplecticContext, k: int, rng: np.random.Generator) -> np.ndarray:
    """
    k generic unit columns of a random Lagrangian subspace: a random column
    subset of an isotropic basis mixed by a random k x k matrix.
    """
    A = rng.standard_normal((ctx.dim, ctx.n_half))
    basis, _ = isotropic_from(A, ctx)
    chosen = np.sort(rng.choice(ctx.n_half, size=k, replace=False))
    U = basis.U[:, chosen] @ rng.standard_normal((k, k))
    return U / np.linalg.norm(U, axis=0)


def check_thr(
    W: Mat,
    lam: complex,
    k: int,
    trials: int,
    ctx: SymplecticContext,
    seed: int = 0,
    tol_rank: Optional[float] = None,
) -> ThrReport:
    """
    Compare observed Segre characteristics of (I + U U^T J) W at lambda with
    the prediction, over `trials` random U. Trial t draws from
    default_rng([seed, t]). Borderline rank decisions are counted apart and
    left out of the match fraction.
    """
    W = ctx.check_square(W, "W")
    tol_rank = ctx.tol_rank if tol_rank is None else tol_rank
    ok, defect = is_symplectic(W, ctx, tol=ctx.tol_struct * max(1.0, norm2(W) ** 2))
    if not ok:
        raise SymplecticError("not_symplectic", f"W is not symplectic (defect {defect:.3e})")
    if not 1 <= k <= ctx.n_half:
        raise SymplecticError("domain", f"k must lie in 1..{ctx.n_half}, got {k}")
    if trials < 1:
        raise SymplecticError("domain", f"trials must be >= 1, got {trials}")

    base = segre_at(W, lam, tol_rank)
    if base.is_empty:
        raise SymplecticError("structure", f"{lam} is not an eigenvalue of W")
    identity = norm2(W - np.eye(ctx.dim)) <= ctx.tol_struct
    case, predicted = predict_segre(base, k, identity=identity)
    logger.info(f"🚀 Checking rank-{k} prediction at {lam}: case {case}, predicted {_sizes_key(predicted)}")

    histogram: Counter = Counter()
    borderline = 0
    matches = 0
    conserved = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        U = random_lagrangian_columns(ctx, k, rng)
        W_tilde = perturbator_from_columns(U, ctx) @ W
        observed = segre_at(W_tilde, lam, tol_rank)
        if total_multiplicity(spectrum_structure(W_tilde, tol_rank)) == ctx.dim:
            conserved += 1
        if observed.borderline:
            borderline += 1
            continue
        histogram[_sizes_key(observed)] += 1
        if observed.sizes == predicted.sizes:
            matches += 1

    decided = trials - borderline
    fraction = matches / decided if decided else 0.0
    logger.info(f"✅ Match fraction {fraction:.3f} over {decided} decided trials ({borderline} borderline)")
    return ThrReport(
        case=case,
        predicted=predicted,
        observed_histogram=dict(histogram),
        match_fraction=fraction,
        borderline_count=borderline,
        seed=seed,
        trials=trials,
        matches=matches,
        multiplicity_conserved=conserved,
        eigenvalue=lam,
        k=k,
    )
