"""
Privacy Witness
================

Constructs alternative (mask, raw data) pairs that produce exactly the same
masked data. Any rotation ``R`` gives ``Q₂ = Q₁R`` and ``x₂ = Rᵀx₁`` with
``Q₂x₂ = Q₁x₁``, so the masked vector alone cannot pin down the raw one.
"""

import numpy as np

from fedbandit.shared.numerics import (
    DimensionMismatchError,
    as_matrix,
    as_vector,
    orthogonality_error,
    random_orthogonal,
    sup_norm,
)
from fedbandit.shared.tolerances import TOLERANCES


def privacy_witness(q1, x1, rng, rotation=None):
    """Returns ``(q2, x2)`` with ``q2`` orthogonal and ``q2 @ x2 == q1 @ x1``.

    For ``d = 1`` the only other orthogonal matrix is ``-q1``, so the
    sign-flipped pair is returned.

    Args:
        q1 (:obj:`np.ndarray`): ``d x d`` orthogonal mask.
        x1 (:obj:`np.ndarray`): Raw vector (or ``d x n`` raw matrix).
        rng (:class:`~fedbandit.shared.numerics.Rng`): Source of the rotation.
        rotation (:obj:`np.ndarray`, `optional`): Use this rotation instead of drawing one.
    """
    q1 = as_matrix(q1, name="mask")
    d = q1.shape[0]
    x1 = np.asarray(x1, dtype=np.float64)
    if x1.ndim == 1:
        as_vector(x1, d, name="raw data")
    elif x1.ndim != 2 or x1.shape[0] != d:
        raise DimensionMismatchError(f"raw data of shape {x1.shape} does not match mask {q1.shape}")
    if orthogonality_error(q1) > TOLERANCES.orthogonality:
        raise ValueError("mask is not orthogonal")

    if d == 1:
        return -q1, -x1

    r = random_orthogonal(d, rng) if rotation is None else as_matrix(rotation, name="rotation")
    q2 = q1 @ r
    x2 = r.T @ x1
    residual = sup_norm(q2 @ x2 - q1 @ x1)
    if residual > TOLERANCES.witness:
        raise ArithmeticError(f"witness reproduces the masked data only to {residual:.3e}")
    return q2, x2
