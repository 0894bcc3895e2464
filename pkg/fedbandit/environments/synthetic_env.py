"""
SyntheticEnv Class
===================

Linear reward model ``r = xᵀθ* + ε`` with unit-norm ``θ*``, Gaussian
contexts normalized to unit length and Gaussian noise.
"""

import numpy as np

from fedbandit.shared.numerics import Rng
from fedbandit.shared.utils import derive_seed

from .environment import Environment, EnvironmentExhausted, EnvRound


class SyntheticEnv(Environment):
    """
    Args:
        d (:obj:`int`): Context dimension.
        num_arms (:obj:`int`): Number of arms ``K``.
        seed (:obj:`int`): Environment seed; fixes ``θ*`` and every round.
        context_sigma2 (:obj:`float`, `optional`, defaults to :obj:`0.05`):
            Variance of the raw context entries before normalization.
        noise_sigma2 (:obj:`float`, `optional`, defaults to :obj:`0.05`):
            Reward noise variance.
        horizon (:obj:`int`, `optional`): Number of rounds available; unlimited by default.
        theta_star (:obj:`np.ndarray`, `optional`): Use this parameter (normalized) instead of drawing one.
    """

    def __init__(
        self,
        d,
        num_arms,
        seed,
        context_sigma2=0.05,
        noise_sigma2=0.05,
        horizon=None,
        theta_star=None,
    ):
        if d < 1 or num_arms < 1:
            raise ValueError(f"`d` and `num_arms` must be positive, got {d} and {num_arms}.")
        if context_sigma2 <= 0 or noise_sigma2 < 0:
            raise ValueError("context variance must be positive and noise variance non-negative.")
        if horizon is not None and horizon < 0:
            raise ValueError(f"`horizon` must be non-negative, got {horizon}.")
        self.d = d
        self.num_arms = num_arms
        self.seed = seed
        self.context_sigma2 = context_sigma2
        self.noise_sigma2 = noise_sigma2
        self.horizon = horizon
        if theta_star is None:
            theta_star = Rng(derive_seed(seed, "theta")).standard_normal(d)
        theta_star = np.asarray(theta_star, dtype=np.float64)
        if theta_star.shape != (d,) or not np.any(theta_star):
            raise ValueError("`theta_star` must be a nonzero vector of dimension d.")
        self.theta_star = theta_star / np.linalg.norm(theta_star)

    def round(self, t):
        return synth_round(self, t)

    def extra_repr_keys(self):
        return ["d", "num_arms", "seed", "context_sigma2", "noise_sigma2", "horizon"]


def synth_round(env, t):
    """K fresh unit-norm contexts and the round's reward noise, drawn from a
    stream keyed by ``(seed, t)``."""
    if t < 0:
        raise ValueError(f"round index must be non-negative, got {t}")
    if env.horizon is not None and t >= env.horizon:
        raise EnvironmentExhausted(f"synthetic environment ends after {env.horizon} rounds")
    rng = Rng(derive_seed(env.seed, "round", t))
    raw = np.sqrt(env.context_sigma2) * rng.standard_normal((env.num_arms, env.d))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    # an all-zero draw has probability zero; fall back to the first axis
    contexts = np.where(norms > 0, raw / np.where(norms > 0, norms, 1.0), np.eye(1, env.d))
    noise = np.sqrt(env.noise_sigma2) * rng.standard_normal() if env.noise_sigma2 > 0 else 0.0
    return EnvRound(t, contexts, contexts @ env.theta_star, float(noise))
