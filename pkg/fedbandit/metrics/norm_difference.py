"""
Norm Difference
================
"""

import numpy as np

from .metric import Metric
from .seed_band import common_length, seed_band


def theta_norm_diff(federated, centralized):
    """``|‖θ̃_t‖₂ − ‖θ̂_t‖₂|`` per round of two runs with the same seed."""
    n = min(len(federated), len(centralized))
    return np.abs(federated.theta_norms[:n] - centralized.theta_norms[:n])


class NormDifference(Metric):
    """Seed band of :func:`theta_norm_diff` over ``(federated, centralized)``
    result pairs."""

    def calculate(self, results):
        band = seed_band(common_length([theta_norm_diff(f, c) for f, c in results]))
        band["max"] = float(np.max(band["mean"])) if band["mean"].size else 0.0
        return band
