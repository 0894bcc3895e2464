"""
RandomPolicy
=============
"""

import numpy as np

from fedbandit.shared.utils import ReprMixin

from .scores import ArmScore


class RandomPolicy(ReprMixin):
    """Uniformly random arm choice; learns nothing. Used as the replay
    baseline for relative CTR."""

    def __init__(self, rng):
        self.rng = rng

    def select(self, contexts):
        k = len(contexts)
        arm = int(self.rng.integers(k))
        return arm, [ArmScore(a, 0.0, 0.0, float(a == arm)) for a in range(k)]

    def choose_block(self, contexts):
        contexts = np.asarray(contexts)
        return self.rng.integers(contexts.shape[1], size=contexts.shape[0])

    def update(self, x, r):
        pass

    def reset(self):
        pass
