"""
BanditState Class
==================
"""

from dataclasses import dataclass, field

import numpy as np

from fedbandit.shared.numerics import (
    as_vector,
    sherman_morrison_update,
    spd_inverse,
)

INVERSE_MODES = ("cholesky", "sherman_morrison")


@dataclass
class BanditState:
    """Ridge-regression sufficient statistics shared by LinUCB, LinTS,
    VFUCB and VFTS.

    Args:
        dim (:obj:`int`): Context dimension ``d``.
        lam (:obj:`float`, `optional`, defaults to :obj:`1.0`):
            Ridge weight; ``Lambda`` starts at ``lam * I``.
        inverse_mode (:obj:`str`, `optional`, defaults to :obj:`"cholesky"`):
            ``"cholesky"`` recomputes ``LambdaInv`` from scratch after every
            update; ``"sherman_morrison"`` applies the rank-1 update instead.
    """

    dim: int
    lam: float = 1.0
    inverse_mode: str = "cholesky"
    Lambda: np.ndarray = field(init=False, repr=False)
    LambdaInv: np.ndarray = field(init=False, repr=False)
    u: np.ndarray = field(init=False, repr=False)
    theta_hat: np.ndarray = field(init=False, repr=False)
    t: int = field(init=False, default=0)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"`dim` must be at least 1, got {self.dim}.")
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"`lam` must be a positive finite float, got {self.lam}.")
        if self.inverse_mode not in INVERSE_MODES:
            raise ValueError(
                f"`inverse_mode` must be one of {INVERSE_MODES}, got {self.inverse_mode}."
            )
        self.Lambda = self.lam * np.eye(self.dim)
        self.LambdaInv = np.eye(self.dim) / self.lam
        self.u = np.zeros(self.dim)
        self.theta_hat = np.zeros(self.dim)
        self.t = 0

    def copy(self):
        other = BanditState(self.dim, self.lam, self.inverse_mode)
        other.Lambda = self.Lambda.copy()
        other.LambdaInv = self.LambdaInv.copy()
        other.u = self.u.copy()
        other.theta_hat = self.theta_hat.copy()
        other.t = self.t
        return other


def update(state, x, r):
    """Applies ``Λ += x xᵀ``, ``u += r x`` and refreshes ``Λ⁻¹`` and
    ``θ̂ = Λ⁻¹ u``. Mutates and returns ``state``."""
    x = as_vector(x, state.dim, name="context")
    r = float(r)
    if not np.isfinite(r):
        raise ValueError(f"reward must be finite, got {r}")
    state.Lambda += np.outer(x, x)
    state.u += r * x
    if state.inverse_mode == "sherman_morrison":
        state.LambdaInv = sherman_morrison_update(state.LambdaInv, x)
    else:
        state.LambdaInv = spd_inverse(state.Lambda)
    state.theta_hat = state.LambdaInv @ state.u
    state.t += 1
    return state
