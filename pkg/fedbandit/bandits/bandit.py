"""
Bandit Policy Abstract Class
=============================
"""

from abc import ABC, abstractmethod

import numpy as np

from fedbandit.shared.tolerances import TOLERANCES
from fedbandit.shared.utils import ReprMixin

from .bandit_state import BanditState, update
from .scores import select_arm


class Bandit(ReprMixin, ABC):
    """A linear contextual bandit policy holding one :class:`BanditState`.

    Policies are single-owner mutable objects: one simulation run (or one
    replay evaluation) drives one policy from a single thread.

    Args:
        dim (:obj:`int`): Context dimension.
        lam (:obj:`float`, `optional`, defaults to :obj:`1.0`): Ridge weight.
        inverse_mode (:obj:`str`, `optional`, defaults to :obj:`"cholesky"`):
            How ``Λ⁻¹`` is maintained, see :class:`BanditState`.

    Arm choice uses :func:`select_arm` with ``tie_atol``: values within it of
    the maximum tie and go to the smallest index. A masked policy and its
    centralized twin compute the same values up to rounding, so both must
    resolve near-ties the same way to make identical choices.
    """

    tie_atol = TOLERANCES.tie_atol

    def __init__(self, dim, lam=1.0, inverse_mode="cholesky"):
        self.dim = dim
        self.lam = lam
        self.inverse_mode = inverse_mode
        self.state = BanditState(dim, lam, inverse_mode)

    @abstractmethod
    def scores(self, contexts):
        """Returns one :class:`ArmScore` per row of ``contexts``."""
        raise NotImplementedError()

    def select(self, contexts):
        """Returns ``(arm, scores)`` for one round."""
        scores = self.scores(contexts)
        return select_arm(scores, self.tie_atol), scores

    def choose_block(self, contexts):
        """Chooses an arm for each of ``B`` independent rounds given a
        ``(B, K, d)`` block, without updating in between."""
        return np.array([self.select(c)[0] for c in contexts], dtype=np.int64)

    def update(self, x, r):
        update(self.state, x, r)

    def reset(self):
        self.state = BanditState(self.dim, self.lam, self.inverse_mode)

    def extra_repr_keys(self):
        return ["dim", "lam", "inverse_mode"]
