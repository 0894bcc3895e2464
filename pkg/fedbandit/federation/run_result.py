"""
Run Results
============
"""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .ledger import Ledger


@dataclass(frozen=True)
class RoundRecord:
    """Outcome of one round. ``theta_norm`` is the norm of the estimator the
    deciding party holds (masked for federated runs)."""

    t: int
    arm: int
    reward: float
    regret: float
    theta_norm: float
    scores: tuple = None


@dataclass
class RunResult:
    """Round records and counters of one run.

    Args:
        config (:class:`~fedbandit.RunConfig`): The run's configuration.
        records (:obj:`list[RoundRecord]`): One record per completed round.
        ledger (:class:`Ledger`): Message and operation counters.
        mask (:obj:`np.ndarray`): The orthogonal mask of a federated run.
        truncated (:obj:`bool`): The environment ran out before ``config.T`` rounds.
        coordinates (:obj:`np.ndarray`): Coordinates seen by a partial run.
    """

    config: object
    records: list = field(default_factory=list)
    ledger: Ledger = field(default_factory=Ledger)
    mask: np.ndarray = field(default=None, repr=False)
    truncated: bool = False
    coordinates: np.ndarray = None

    def __len__(self):
        return len(self.records)

    @property
    def arms(self):
        return np.array([r.arm for r in self.records], dtype=np.int64)

    @property
    def rewards(self):
        return np.array([r.reward for r in self.records])

    @property
    def regrets(self):
        return np.array([r.regret for r in self.records])

    @property
    def cumulative_regret(self):
        return np.cumsum(self.regrets)

    @property
    def theta_norms(self):
        return np.array([r.theta_norm for r in self.records])

    def to_frame(self):
        """Long-format table with one row per round."""
        return pd.DataFrame(
            {
                "t": [r.t for r in self.records],
                "arm": self.arms,
                "reward": self.rewards,
                "regret": self.regrets,
                "cumulative_regret": self.cumulative_regret,
                "theta_norm": self.theta_norms,
            }
        )
