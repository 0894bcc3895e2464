"""
LinUCB
=======
"""

import numpy as np

from .bandit import Bandit
from .scores import UcbParams, exploration_radicands, select_arms, ucb_scores


class LinUCB(Bandit):
    """Optimistic linear bandit: value = ``xᵀθ̂ + β √(xᵀΛ⁻¹x)``.

    Args:
        dim (:obj:`int`): Context dimension.
        beta (:obj:`float`, `optional`, defaults to :obj:`0.5`): Exploration coefficient.
    """

    def __init__(self, dim, beta=0.5, lam=1.0, inverse_mode="cholesky"):
        super().__init__(dim, lam=lam, inverse_mode=inverse_mode)
        self.params = UcbParams(beta)
        self.beta = beta

    def scores(self, contexts):
        return ucb_scores(self.state, self.params, contexts)

    def choose_block(self, contexts):
        contexts = np.asarray(contexts, dtype=np.float64)
        means = contexts @ self.state.theta_hat
        bonus = self.beta * np.sqrt(
            exploration_radicands(self.state.LambdaInv, contexts)
        )
        return select_arms(means + bonus, self.tie_atol)

    def extra_repr_keys(self):
        return ["dim", "beta", "lam", "inverse_mode"]
