"""
ExperimentRunner Class
=======================

Runs every (cell, repetition) job of an :class:`ExperimentSpec`, in a
worker pool when asked, and merges the results in (cell, repetition) order
so output files do not depend on completion order.
"""

import logging
import multiprocessing as mp
import os

import numpy as np
import pandas as pd
import tqdm

from fedbandit.bandits import PartialPolicy, RandomPolicy
from fedbandit.environments import (
    ingest_log,
    make_planted_log,
    random_baseline,
    read_cache,
    read_criteo_rows,
    replay_evaluate,
    write_cache,
)
from fedbandit.federation import (
    MaskedPolicy,
    make_policy,
    partial_coordinates,
    run_simulation,
)
from fedbandit.loggers import ResultLogManager
from fedbandit.masking import MaskGenerator
from fedbandit.metrics import (
    FinalRegret,
    QuarterRegretRates,
    RegretCurve,
    RelativeCTR,
    regret_diff,
    seed_band,
    theta_norm_diff,
)
from fedbandit.shared.numerics import Rng
from fedbandit.shared.utils import logger, output_dir

TRACE_COLUMNS = ["cell", "seed", "t", "metric", "value"]
AGGREGATE_COLUMNS = ["cell", "metric", "t", "mean", "std", "lo", "hi"]
CTR_COLUMNS = [
    "cell",
    "seed",
    "relative_ctr",
    "ctr",
    "random_ctr",
    "credited",
    "clicks",
    "events",
]
CTR_TRACE_COLUMNS = ["cell", "seed", "events_seen", "credited", "ctr"]
TRACE_METRICS = (
    "regret",
    "cumulative_regret",
    "theta_norm",
    "theta_norm_diff",
    "regret_diff",
)
METRIC_DESCRIPTIONS = {
    "regret": "instantaneous regret max_a x_aᵀθ* − x_{a_t}ᵀθ* of round t",
    "cumulative_regret": "sum of instantaneous regret over rounds 0..t",
    "theta_norm": "l2 norm of the deciding party's estimator after round t (masked for VFUCB/VFTS)",
    "theta_norm_diff": "|‖θ̃_t‖₂ − ‖θ̂_t‖₂| between a federated or partial cell and its centralized twin on the same seed",
    "regret_diff": "cumulative regret of a federated or partial cell minus that of its centralized twin on the same seed",
    "relative_ctr": "policy CTR divided by the mean CTR of a uniform-random policy on the same replay",
    "ctr": "credited clicks divided by credited events in replay",
    "random_ctr": "mean CTR of the uniform-random policy over the baseline seeds",
}

_WORKER_LOG = None


def _set_worker_log(log):
    global _WORKER_LOG
    _WORKER_LOG = log


def _init_worker(log):
    _set_worker_log(log)
    logging.disable(logging.WARNING)


def synthetic_job(job):
    """Runs one synthetic (cell, repetition) job. Federated and partial cells
    also run their centralized twin on the same seed for the norm and
    regret difference traces."""
    cell_index, rep, seed, cfg = job
    cfg = cfg.replace(seed=seed)
    result = run_simulation(cfg)
    payload = {
        "cell": cell_index,
        "seed": rep,
        "run_seed": seed,
        "regret": result.regrets,
        "cumulative_regret": result.cumulative_regret,
        "theta_norm": result.theta_norms,
        "truncated": result.truncated,
        "ledger": result.ledger.summary(),
        "theta_norm_diff": None,
        "regret_diff": None,
    }
    if cfg.is_federated or cfg.is_partial:
        twin = run_simulation(cfg.twin())
        payload["theta_norm_diff"] = theta_norm_diff(result, twin)
        payload["regret_diff"] = regret_diff(result, twin)
    return payload


def build_replay_policy(cell, cfg):
    """The policy a replay cell evaluates on a log of dimension ``cfg.d``."""
    if cell.algorithm == "Random":
        return RandomPolicy(Rng(cfg.stream_seed("policy")))
    if cfg.is_partial:
        coords = partial_coordinates(cfg)
        return PartialPolicy(make_policy(cfg, len(coords)), coords)
    if cfg.is_federated:
        generator = MaskGenerator(cfg.dim_partition, Rng(cfg.stream_seed("mask")), mode=cfg.pmg)
        return MaskedPolicy(make_policy(cfg, cfg.d), generator)
    return make_policy(cfg, cfg.d)


def replay_job(job):
    cell_index, rep, seed, cell, baseline, block_size = job
    log = _WORKER_LOG
    cfg = cell.run_config(log.d, seed, rep)
    evaluation = replay_evaluate(
        build_replay_policy(cell, cfg), log, seed=seed, block_size=block_size, baseline=baseline
    )
    return {"cell": cell_index, "seed": rep, "run_seed": seed, "evaluation": evaluation}


def load_replay_log(source):
    """Reads the cache when it exists; otherwise ingests the raw log (and
    caches it) or generates the planted log."""
    if source.cache and os.path.exists(source.cache):
        logger.info(f"Loading replay cache {source.cache}")
        return read_cache(source.cache)
    if source.log:
        log = ingest_log(read_criteo_rows(source.log), source.ingest_config)
        if source.cache:
            write_cache(log, source.cache)
        return log
    if source.planted is not None:
        return make_planted_log(**source.planted)
    raise FileNotFoundError(f"replay cache {source.cache} does not exist and no raw log was given")


class ExperimentRunner:
    """Runs an :class:`ExperimentSpec`.

    Args:
        spec (:class:`ExperimentSpec`): What to run.
        threads (:obj:`int`, `optional`, defaults to :obj:`1`): Worker processes.
        coupled_ts (:obj:`bool`, `optional`, defaults to :obj:`False`):
            Force coupled VFTS sampling in every cell.
        silent (:obj:`bool`, `optional`, defaults to :obj:`False`):
            Only log errors and hide the progress bar.
    """

    def __init__(self, spec, threads=1, coupled_ts=False, silent=False):
        if threads < 1:
            raise ValueError(f"`threads` must be at least 1, got {threads}.")
        self.spec = spec
        self.threads = threads
        self.coupled_ts = coupled_ts
        self.silent = silent
        self.log = None
        self.baseline = None

    def _jobs(self):
        jobs = []
        for cell_index, rep, seed in self.spec.jobs():
            cell = self.spec.cells[cell_index]
            if self.spec.kind == "synthetic":
                if self.coupled_ts:
                    cell = cell.replace(coupled_ts=True)
                jobs.append((cell_index, rep, seed, cell))
            else:
                jobs.append(
                    (cell_index, rep, seed, cell, self.baseline, self.spec.replay.block_size)
                )
        return jobs

    def _map(self, fn, jobs, initargs):
        results = []
        pbar = tqdm.tqdm(total=len(jobs), smoothing=0, dynamic_ncols=True, disable=self.silent)
        if self.threads == 1:
            _set_worker_log(*initargs)
            for job in jobs:
                results.append(fn(job))
                pbar.update(1)
        else:
            logger.info(f"Running {len(jobs)} jobs on {self.threads} worker(s).")
            with mp.Pool(self.threads, _init_worker, initargs) as pool:
                for payload in pool.imap_unordered(fn, jobs):
                    results.append(payload)
                    pbar.update(1)
        pbar.close()
        return sorted(results, key=lambda p: (p["cell"], p["seed"]))

    def run(self):
        """Runs every job and returns the merged payloads, sorted by
        (cell, repetition)."""
        if self.silent:
            logger.setLevel(logging.ERROR)
        try:
            if self.spec.kind == "synthetic":
                return self._map(synthetic_job, self._jobs(), (None,))
            self.log = load_replay_log(self.spec.replay)
            logger.info(
                f"Replaying {len(self.log)} events over {self.log.num_arms} arms (d={self.log.d})"
            )
            self.baseline = random_baseline(
                self.log,
                self.spec.base_seed,
                self.spec.replay.baseline_seeds,
                self.spec.replay.block_size,
            )
            return self._map(replay_job, self._jobs(), (self.log,))
        finally:
            if self.silent:
                logger.setLevel(logging.INFO)

    def write(self, payloads, out_dir=None):
        """Writes result tables, ``summary.json`` and ``manifest.json``.

        Returns:
            :obj:`str`: The output directory.
        """
        out_dir = out_dir or self.spec.output_dir or output_dir()
        os.makedirs(out_dir, exist_ok=True)
        manager = ResultLogManager()
        if not self.silent:
            manager.enable_stdout()
        if self.spec.kind == "synthetic":
            metrics = self._write_synthetic(manager, payloads, out_dir)
        else:
            metrics = self._write_replay(manager, payloads, out_dir)
        manager.flush()
        manager.write_manifest(
            os.path.join(out_dir, "manifest.json"), metrics, self.spec.to_dict()
        )
        manager.close()
        logger.info(f"Wrote results to {out_dir}")
        return out_dir

    def _by_cell(self, payloads):
        cells = {i: [] for i in range(len(self.spec.cells))}
        for p in payloads:
            cells[p["cell"]].append(p)
        return cells

    def _write_synthetic(self, manager, payloads, out_dir):
        manager.add_output_csv(
            os.path.join(out_dir, "traces.csv"),
            "traces",
            TRACE_COLUMNS,
            "per-round metrics of every cell and repetition (long format)",
        )
        manager.add_output_csv(
            os.path.join(out_dir, "aggregate.csv"),
            "aggregate",
            AGGREGATE_COLUMNS,
            "seed mean, standard deviation and mean ± std band per round",
        )
        manager.add_output_summary_json(
            os.path.join(out_dir, "summary.json"), "final regret and ledger totals per cell"
        )
        for cell_index, cell_payloads in self._by_cell(payloads).items():
            name = self.spec.names[cell_index]
            for p in cell_payloads:
                for metric in TRACE_METRICS:
                    values = p[metric]
                    if values is None:
                        continue
                    manager.log_frame(
                        "traces",
                        pd.DataFrame(
                            {
                                "cell": name,
                                "seed": p["seed"],
                                "t": np.arange(len(values)),
                                "metric": metric,
                                "value": values,
                            }
                        ),
                    )
            for metric in TRACE_METRICS:
                traces = [p[metric] for p in cell_payloads if p[metric] is not None]
                if not traces or min(len(t) for t in traces) == 0:
                    continue
                n = min(len(t) for t in traces)
                band = seed_band([t[:n] for t in traces])
                manager.log_frame(
                    "aggregate",
                    pd.DataFrame({"cell": name, "metric": metric, "t": np.arange(n), **band}),
                )
            manager.log_summary_rows(self._synthetic_summary(cell_payloads), name)
        return {m: METRIC_DESCRIPTIONS[m] for m in TRACE_METRICS}

    def _synthetic_summary(self, cell_payloads):
        runs = [_TraceView(p) for p in cell_payloads]
        final = FinalRegret().calculate(runs)
        rows = [
            ("final_regret_mean", final["mean"]),
            ("final_regret_std", final["std"]),
            ("repetitions", len(runs)),
            ("truncated_runs", sum(int(p["truncated"]) for p in cell_payloads)),
        ]
        if all(len(r) >= 4 for r in runs):
            rows.append(("quarter_regret_rates", QuarterRegretRates().calculate(runs)))
        if all(len(r) for r in runs):
            band = RegretCurve().calculate(runs)
            rows.append(("final_regret_lo", float(band["lo"][-1])))
            rows.append(("final_regret_hi", float(band["hi"][-1])))
        diffs = [p["theta_norm_diff"] for p in cell_payloads if p["theta_norm_diff"] is not None]
        if diffs and all(len(d) for d in diffs):
            rows.append(("max_theta_norm_diff", float(max(np.max(d) for d in diffs))))
        gaps = [
            p["regret_diff"][-1]
            for p in cell_payloads
            if p["regret_diff"] is not None and len(p["regret_diff"])
        ]
        if gaps:
            rows.append(("final_regret_diff_mean", float(np.mean(gaps))))
        rows += [(f"ledger_{k}", v) for k, v in cell_payloads[0]["ledger"].items()]
        return rows

    def _write_replay(self, manager, payloads, out_dir):
        manager.add_output_csv(
            os.path.join(out_dir, "ctr.csv"),
            "ctr",
            CTR_COLUMNS,
            "relative CTR of every cell and repetition",
        )
        manager.add_output_csv(
            os.path.join(out_dir, "ctr_trace.csv"),
            "ctr_trace",
            CTR_TRACE_COLUMNS,
            "running CTR checkpoints of every replay",
        )
        manager.add_output_summary_json(
            os.path.join(out_dir, "summary.json"), "mean relative CTR per cell"
        )
        for cell_index, cell_payloads in self._by_cell(payloads).items():
            name = self.spec.names[cell_index]
            evaluations = [p["evaluation"] for p in cell_payloads]
            manager.log_frame(
                "ctr",
                pd.DataFrame(
                    [
                        {
                            "cell": name,
                            "seed": p["seed"],
                            "relative_ctr": e.relative_ctr,
                            "ctr": e.ctr,
                            "random_ctr": e.random_ctr,
                            "credited": e.policy.credited,
                            "clicks": e.policy.clicks,
                            "events": e.policy.events,
                        }
                        for p, e in zip(cell_payloads, evaluations)
                    ]
                ),
            )
            for p, e in zip(cell_payloads, evaluations):
                manager.log_frame(
                    "ctr_trace",
                    pd.DataFrame(e.policy.trace, columns=["events_seen", "credited", "ctr"]).assign(
                        cell=name, seed=p["seed"]
                    ),
                )
            stats = RelativeCTR().calculate(evaluations)
            manager.log_summary_rows(
                [
                    ("relative_ctr_mean", stats["mean"]),
                    ("relative_ctr_sem", stats["sem"]),
                    ("ctr", stats["ctr"]),
                    ("random_ctr", stats["random_ctr"]),
                    ("credited_events", stats["credited"]),
                ],
                name,
            )
        return {m: METRIC_DESCRIPTIONS[m] for m in ("relative_ctr", "ctr", "random_ctr")}


class _TraceView:
    """Adapts a job payload to the :class:`RunResult` attributes metrics read."""

    def __init__(self, payload):
        self.cumulative_regret = payload["cumulative_regret"]

    def __len__(self):
        return len(self.cumulative_regret)
