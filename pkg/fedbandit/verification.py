"""
Invariant Suites
=================

Executable checks of the properties the simulator promises: orthogonal
masks and stable factorizations, lossless federated decisions, rotated
estimators, privacy witnesses and the closed-form ledger. ``fedbandit
verify`` runs them as a smoke test.
"""

from dataclasses import dataclass

import numpy as np

from fedbandit.costs import CostParams, comm_elements, compute_ops
from fedbandit.federation import run_centralized, run_vfts, run_vfucb
from fedbandit.masking import DimPartition, privacy_witness
from fedbandit.run_config import RunConfig
from fedbandit.shared.numerics import (
    Rng,
    cholesky,
    orthogonality_error,
    random_orthogonal,
    spd_inverse,
    sup_norm,
)
from fedbandit.shared.tolerances import TOLERANCES
from fedbandit.shared.utils import derive_seed, logger

SUITES = ("orthogonality", "lossless_vfucb", "lossless_vfts", "privacy_witness", "ledger")
WITNESS_DIMS = (2, 8, 32)


@dataclass
class SuiteResult:
    """Verdict of one suite. A failure names the property, the seed that
    witnesses it and, for run comparisons, the first divergent round."""

    name: str
    passed: bool
    checked: int
    failure: str = None
    seed: int = None
    round: int = None

    def __str__(self):
        if self.passed:
            return f"{self.name}: PASS ({self.checked} checked)"
        where = f" at round {self.round}" if self.round is not None else ""
        return f"{self.name}: FAIL {self.failure}{where} (seed {self.seed})"


def _close(a, b, rel):
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    return bool(np.all(np.abs(a - b) <= rel * np.maximum(1.0, np.abs(b))))


def verify_orthogonality(seeds, base_seed=0):
    """Random orthogonal matrices and SPD Cholesky/inverse round trips."""
    dims = (1, 2, 8, 32, 64, 128)
    for i in range(seeds):
        seed = derive_seed(base_seed, "orthogonality", i)
        rng = Rng(seed)
        d = dims[i % len(dims)]
        q = random_orthogonal(d, rng)
        err = orthogonality_error(q)
        if err > TOLERANCES.orthogonality:
            return SuiteResult("orthogonality", False, i, f"‖QᵀQ − I‖∞ = {err:.3e} at d={d}", seed)
        b = rng.standard_normal((d, d))
        a = b @ b.T + d * np.eye(d)
        factor = cholesky(a)
        scale = max(1.0, sup_norm(a))
        if sup_norm(factor @ factor.T - a) > TOLERANCES.cholesky_reconstruction * scale:
            return SuiteResult("orthogonality", False, i, f"Cholesky round trip failed at d={d}", seed)
        if sup_norm(spd_inverse(a) @ a - np.eye(d)) > TOLERANCES.inverse_residual:
            return SuiteResult("orthogonality", False, i, f"SPD inverse residual too large at d={d}", seed)
    return SuiteResult("orthogonality", True, seeds)


def _lossless_config(algorithm, seed):
    return RunConfig(
        algorithm=algorithm,
        T=150,
        K=5,
        d=12,
        partition=(3, 4, 5),
        seed=seed,
        coupled_ts=True,
        record_scores=True,
    )


def first_divergence(federated, centralized, rel=None):
    """First round where the arms differ or an arm's score disagrees beyond
    ``rel`` (relative), else ``None``."""
    rel = TOLERANCES.lossless_relative if rel is None else rel
    for fed, cen in zip(federated.records, centralized.records):
        if fed.arm != cen.arm:
            return fed.t, f"arm {fed.arm} != {cen.arm}"
        if fed.scores is not None and cen.scores is not None:
            for f, c in zip(fed.scores, cen.scores):
                if not (_close(f.mean, c.mean, rel) and _close(f.bonus, c.bonus, rel)):
                    return fed.t, f"arm {f.arm} score {f.value!r} != {c.value!r}"
    if len(federated.records) != len(centralized.records):
        return min(len(federated.records), len(centralized.records)), "run lengths differ"
    return None


def _faulty_mask(cfg):
    q = random_orthogonal(cfg.d, Rng(cfg.stream_seed("mask")))
    q[0, 0] = -q[0, 0]
    return q


def verify_lossless(algorithm, seeds, base_seed=0, inject_fault=False):
    """Federated and centralized runs with the same seed make the same
    decisions; the masked estimator is the rotated centralized one."""
    name = "lossless_vfucb" if algorithm == "VFUCB" else "lossless_vfts"
    runner = run_vfucb if algorithm == "VFUCB" else run_vfts
    for i in range(seeds):
        seed = derive_seed(base_seed, name, i)
        cfg = _lossless_config(algorithm, seed)
        central_thetas, fed_thetas = [], []
        centralized = run_centralized(
            cfg.twin(), observer=lambda t, p, r, a: central_thetas.append(p.state.theta_hat.copy())
        )
        federated = runner(
            cfg,
            observer=lambda t, p, r, a: fed_thetas.append(p.state.theta_hat.copy()),
            mask_override=_faulty_mask(cfg) if inject_fault else None,
            validate_mask=not inject_fault,
        )
        divergence = first_divergence(federated, centralized)
        if divergence is not None:
            return SuiteResult(name, False, i, divergence[1], seed, divergence[0])
        q = federated.mask
        for t, (fed, cen) in enumerate(zip(fed_thetas, central_thetas)):
            if sup_norm(fed - q @ cen) > TOLERANCES.lossless_relative:
                return SuiteResult(name, False, i, "θ̃ != Qθ̂", seed, t)
    return SuiteResult(name, True, seeds)


def verify_privacy_witness(seeds, base_seed=0):
    """``seeds`` witnesses cycling over d ∈ {2, 8, 32}."""
    for i in range(seeds):
        seed = derive_seed(base_seed, "privacy_witness", i)
        rng = Rng(seed)
        d = WITNESS_DIMS[i % len(WITNESS_DIMS)]
        q1 = random_orthogonal(d, rng)
        x1 = rng.standard_normal(d)
        q2, x2 = privacy_witness(q1, x1, rng)
        residual = sup_norm(q2 @ x2 - q1 @ x1)
        if residual > TOLERANCES.witness:
            return SuiteResult("privacy_witness", False, i, f"Q₂X₂ misses Q₁X₁ by {residual:.3e}", seed)
        if sup_norm(x2 - x1) <= TOLERANCES.witness_distinct:
            return SuiteResult("privacy_witness", False, i, "witness repeats the raw data", seed)
        if orthogonality_error(q2) > TOLERANCES.orthogonality * 10:
            return SuiteResult("privacy_witness", False, i, "witness mask is not orthogonal", seed)
    return SuiteResult("privacy_witness", True, seeds)


def random_ledger_config(rng, seed, algorithm="VFUCB"):
    """A small random configuration: T ≤ 50, K ≤ 8, M ≤ 5, d ≤ 32."""
    M = int(rng.integers(5)) + 1
    d = M + int(rng.integers(33 - M))
    cuts = np.sort(rng.permutation(d - 1)[: M - 1] + 1)
    dims = np.diff(np.concatenate([[0], cuts, [d]]))
    return RunConfig(
        algorithm=algorithm,
        T=int(rng.integers(50)) + 1,
        K=int(rng.integers(8)) + 1,
        d=d,
        partition=tuple(int(x) for x in dims),
        seed=seed,
    )


def verify_ledger(seeds, base_seed=0):
    """Simulated ledgers equal the closed-form communication and operation
    models exactly."""
    for i in range(seeds):
        seed = derive_seed(base_seed, "ledger", i)
        cfg = random_ledger_config(Rng(seed), seed, ("VFUCB", "VFTS")[i % 2])
        runner = run_vfucb if cfg.algorithm == "VFUCB" else run_vfts
        result = runner(cfg)
        p = CostParams(T=cfg.T, K=cfg.K, M=len(cfg.partition), d=cfg.d)
        if result.ledger.total_elements != comm_elements(p):
            return SuiteResult(
                "ledger",
                False,
                i,
                f"ledger has {result.ledger.total_elements} elements, model {comm_elements(p)}",
                seed,
            )
        if result.ledger.total_ops != compute_ops(cfg.algorithm, p).total_ops:
            return SuiteResult("ledger", False, i, "ledger operations differ from the model", seed)
    return SuiteResult("ledger", True, seeds)


def run_suites(seeds=20, base_seed=0, suites=SUITES, inject_fault=False):
    """Runs the named suites and returns their :class:`SuiteResult` list."""
    checks = {
        "orthogonality": lambda: verify_orthogonality(seeds, base_seed),
        "lossless_vfucb": lambda: verify_lossless("VFUCB", seeds, base_seed, inject_fault),
        "lossless_vfts": lambda: verify_lossless("VFTS", seeds, base_seed, inject_fault),
        "privacy_witness": lambda: verify_privacy_witness(seeds, base_seed),
        "ledger": lambda: verify_ledger(seeds, base_seed),
    }
    results = []
    for name in suites:
        if name not in checks:
            raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
        result = checks[name]()
        (logger.info if result.passed else logger.error)(str(result))
        results.append(result)
    return results
