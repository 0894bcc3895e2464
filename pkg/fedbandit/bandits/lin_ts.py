"""
LinTS
======
"""

from .bandit import Bandit
from .scores import TsParams, ts_scores_with_draw


class LinTS(Bandit):
    """Linear Thompson sampling: draws ``μ ~ N(θ̂, v²Λ⁻¹)`` each round and
    plays ``argmax xᵀμ``.

    Args:
        dim (:obj:`int`): Context dimension.
        rng (:class:`~fedbandit.shared.numerics.Rng`): Source of the normal draws.
        v (:obj:`float`, `optional`, defaults to :obj:`0.01`): Prior scale.
        factor_fn (:obj:`callable`, `optional`):
            Maps the current :class:`BanditState` to the factor ``A`` with
            ``A Aᵀ = Λ⁻¹``. Defaults to the Cholesky factor; overridden to
            couple a federated run to its centralized twin.
    """

    def __init__(self, dim, rng, v=0.01, lam=1.0, inverse_mode="cholesky", factor_fn=None):
        super().__init__(dim, lam=lam, inverse_mode=inverse_mode)
        self.rng = rng
        self.v = v
        self.params = TsParams(v)
        self.factor_fn = factor_fn
        self.last_draw = None

    def scores(self, contexts):
        factor = self.factor_fn(self.state) if self.factor_fn else None
        scores, self.last_draw = ts_scores_with_draw(
            self.state, self.params, contexts, self.rng, cov_factor=factor
        )
        return scores

    def extra_repr_keys(self):
        return ["dim", "v", "lam", "inverse_mode"]
