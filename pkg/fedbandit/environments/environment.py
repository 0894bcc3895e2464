"""
Environment Abstract Class
===========================
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from fedbandit.shared.utils import ReprMixin


class EnvironmentExhausted(Exception):
    """Raised when an environment has no round ``t`` to serve."""


@dataclass(frozen=True)
class EnvRound:
    """One round served by an environment.

    Args:
        t (:obj:`int`): Round index.
        contexts (:obj:`np.ndarray`): ``(K, d)`` context set.
        expected (:obj:`np.ndarray`): Noiseless reward of every arm.
        noise (:obj:`float`): Reward noise of this round, shared by all arms.
    """

    t: int
    contexts: np.ndarray
    expected: np.ndarray
    noise: float = 0.0

    @property
    def num_arms(self):
        return self.contexts.shape[0]

    def reward(self, arm):
        return float(self.expected[arm] + self.noise)

    def regret(self, arm):
        """``max_a xᵀθ* − x_armᵀθ*``."""
        return float(self.expected.max() - self.expected[arm])


class Environment(ReprMixin, ABC):
    """Serves one :class:`EnvRound` per round index. Round ``t`` depends only
    on the environment seed and ``t``."""

    d = None
    num_arms = None
    horizon = None

    @abstractmethod
    def round(self, t):
        """Returns the :class:`EnvRound` for round ``t``.

        Raises:
            EnvironmentExhausted: ``t`` is past the horizon.
        """
        raise NotImplementedError()

    def extra_repr_keys(self):
        return ["d", "num_arms", "horizon"]
