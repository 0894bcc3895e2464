"""
Arm Scoring
============

UCB and Thompson-sampling arm scores over a context set, and the argmax
rule shared by every policy.
"""

from dataclasses import dataclass

import numpy as np

from fedbandit.shared.numerics import (
    DimensionMismatchError,
    cholesky,
    mvn_sample,
)
from fedbandit.shared.tolerances import TOLERANCES


class NegativeRadicandError(ValueError):
    pass


@dataclass(frozen=True)
class UcbParams:
    """Constant exploration coefficient ``beta``."""

    beta: float = 0.5

    def __post_init__(self):
        if not (np.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"`beta` must be finite and non-negative, got {self.beta}.")


@dataclass(frozen=True)
class TsParams:
    """Prior standard-deviation scale ``v``."""

    v: float = 0.01

    def __post_init__(self):
        if not (np.isfinite(self.v) and self.v >= 0):
            raise ValueError(f"`v` must be finite and non-negative, got {self.v}.")


@dataclass(frozen=True)
class ArmScore:
    arm: int
    mean: float
    bonus: float
    value: float


@dataclass(frozen=True)
class ThompsonDraw:
    """The standard-normal vector, covariance factor and sampled parameter
    used by one Thompson-sampling round."""

    z: np.ndarray
    factor: np.ndarray
    mu: np.ndarray


def as_context_set(contexts, dim):
    contexts = np.asarray(contexts, dtype=np.float64)
    if contexts.ndim != 2 or contexts.shape[0] < 1:
        raise DimensionMismatchError(
            f"context set must be a non-empty (K, d) array, got shape {contexts.shape}"
        )
    if contexts.shape[1] != dim:
        raise DimensionMismatchError(
            f"contexts have dimension {contexts.shape[1]}, state has dimension {dim}"
        )
    return contexts


def exploration_radicands(lambda_inv, contexts):
    """``xᵀ Λ⁻¹ x`` for every context (rows of ``contexts``; any leading
    batch shape). Roundoff negatives are clamped to zero."""
    rad = np.einsum("...i,ij,...j->...", contexts, lambda_inv, contexts)
    if np.any(rad < -TOLERANCES.radicand_clamp):
        raise NegativeRadicandError(
            f"exploration radicand {rad.min():.3e} is negative; Λ⁻¹ is not PSD"
        )
    return np.maximum(rad, 0.0)


def ucb_scores(state, params, contexts):
    contexts = as_context_set(contexts, state.dim)
    means = contexts @ state.theta_hat
    bonuses = params.beta * np.sqrt(exploration_radicands(state.LambdaInv, contexts))
    return [
        ArmScore(a, float(m), float(b), float(m + b))
        for a, (m, b) in enumerate(zip(means, bonuses))
    ]


def ts_scores_with_draw(state, params, contexts, rng, cov_factor=None):
    """Samples ``μ ~ N(θ̂, v² Λ⁻¹)`` once and scores every arm by ``xᵀμ``.

    Args:
        cov_factor (:obj:`np.ndarray`, `optional`):
            ``A`` with ``A Aᵀ = Λ⁻¹``. Defaults to the Cholesky factor of
            ``state.LambdaInv``.

    Returns:
        :obj:`(list[ArmScore], ThompsonDraw)`
    """
    contexts = as_context_set(contexts, state.dim)
    if cov_factor is None:
        cov_factor = cholesky(state.LambdaInv)
    z = rng.standard_normal(state.dim)
    factor = params.v * cov_factor
    mu = mvn_sample(state.theta_hat, factor, rng, z=z)
    means = contexts @ mu
    scores = [ArmScore(a, float(m), 0.0, float(m)) for a, m in enumerate(means)]
    return scores, ThompsonDraw(z=z, factor=factor, mu=mu)


def ts_scores(state, params, contexts, rng, cov_factor=None):
    scores, _ = ts_scores_with_draw(state, params, contexts, rng, cov_factor)
    return scores


def _values(scores):
    values = np.array(
        [s.value if isinstance(s, ArmScore) else s for s in scores], dtype=np.float64
    )
    if values.size == 0:
        raise ValueError("cannot select an arm from an empty score list")
    if np.any(np.isnan(values)):
        raise ValueError("arm values contain NaN")
    return values


def select_arm(scores, tie_atol=0.0):
    """Smallest index attaining the maximal value.

    With ``tie_atol > 0``, values within ``tie_atol`` of the maximum also
    count as ties.
    """
    values = _values(scores)
    return int(np.argmax(values >= values.max() - tie_atol))


def select_arms(values, tie_atol=0.0):
    """Row-wise :func:`select_arm` over a ``(B, K)`` array of values."""
    values = np.asarray(values, dtype=np.float64)
    if np.any(np.isnan(values)):
        raise ValueError("arm values contain NaN")
    best = values.max(axis=1, keepdims=True)
    return np.argmax(values >= best - tie_atol, axis=1)
