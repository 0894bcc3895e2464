"""
CTR Metrics
============
"""

import numpy as np
import scipy.stats

from .metric import Metric


class RelativeCTR(Metric):
    """Relative CTR over the replays of one cell (seeds or random
    coordinate partitions)."""

    def calculate(self, results):
        rel = np.array([r.relative_ctr for r in results])
        return {
            "relative_ctr": rel,
            "mean": float(rel.mean()),
            "sem": float(scipy.stats.sem(rel)) if len(rel) > 1 else 0.0,
            "ctr": float(np.mean([r.ctr for r in results])),
            "random_ctr": float(np.mean([r.random_ctr for r in results])),
            "credited": int(sum(r.policy.credited for r in results)),
        }
