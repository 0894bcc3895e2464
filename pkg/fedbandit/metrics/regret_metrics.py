"""
Regret Metrics
===============
"""

import numpy as np

from .metric import Metric
from .seed_band import common_length, seed_band


class RegretCurve(Metric):
    """Cumulative regret per round, averaged over seeds."""

    def calculate(self, results):
        band = seed_band(common_length([r.cumulative_regret for r in results]))
        band["t"] = np.arange(len(band["mean"]))
        return band


class FinalRegret(Metric):
    """Cumulative regret at the last round, per seed and averaged."""

    def calculate(self, results):
        finals = np.array([r.cumulative_regret[-1] if len(r) else 0.0 for r in results])
        return {
            "final_regret": finals,
            "mean": float(finals.mean()),
            "std": float(finals.std(ddof=1)) if len(finals) > 1 else 0.0,
        }


class QuarterRegretRates(Metric):
    """Average regret per round ``R(t)/t`` at the end of each quarter of the
    horizon, seed-averaged. A sublinear regret curve gives a decreasing
    sequence."""

    def calculate(self, results):
        curves = common_length([r.cumulative_regret for r in results]).mean(axis=0)
        T = len(curves)
        if T < 4:
            raise ValueError("need at least four rounds to split the horizon into quarters")
        ends = [T * q // 4 for q in range(1, 5)]
        return [float(curves[e - 1] / e) for e in ends]


def regret_diff(run, reference):
    """Cumulative regret of ``run`` minus that of ``reference`` per round,
    over the rounds both played."""
    n = min(len(run), len(reference))
    return run.cumulative_regret[:n] - reference.cumulative_regret[:n]
