"""
Mask Operations
================
"""

import numpy as np

from fedbandit.shared.numerics import DimensionMismatchError, as_matrix, as_vector

from .mask_types import MaskedContext, MaskMismatchError, MaskShard


def partition_mask(q, partition):
    """Cuts ``q`` into contiguous column blocks, one per participant in
    participant order.

    Raises:
        MaskMismatchError: the partition does not sum to the size of ``q``.
    """
    q = as_matrix(q, name="mask")
    if q.shape[0] != q.shape[1]:
        raise DimensionMismatchError(f"mask must be square, got {q.shape}")
    if partition.d != q.shape[0]:
        raise MaskMismatchError(
            f"partition {partition} sums to {partition.d}, mask has dimension {q.shape[0]}"
        )
    return [MaskShard(j, q[:, s]) for j, s in enumerate(partition.slices())]


def mask_local(shard, x_local, arm=0, round=0):
    """Embeds a participant's local context into masked global coordinates:
    ``Q^j x^j``."""
    x_local = as_vector(x_local, shard.local_dim, name="local context")
    return MaskedContext(shard.block @ x_local, arm, round)


def mask_local_set(shard, contexts_local):
    """Masks a ``(K, d_j)`` block of local contexts at once. Returns a
    ``(K, d)`` array."""
    contexts_local = np.asarray(contexts_local, dtype=np.float64)
    if contexts_local.ndim != 2 or contexts_local.shape[1] != shard.local_dim:
        raise DimensionMismatchError(
            f"local contexts of shape {contexts_local.shape} do not match shard "
            f"with {shard.local_dim} columns"
        )
    return contexts_local @ shard.block.T


def aggregate(masked):
    """Entrywise sum of masked shares of one (round, arm) context. When the
    shares come from one partition of ``Q`` the result is ``Q x``.

    Raises:
        MaskMismatchError: shares disagree on round, arm or dimension.
    """
    masked = list(masked)
    if not masked:
        raise MaskMismatchError("cannot aggregate an empty list of masked contexts")
    first = masked[0]
    for m in masked[1:]:
        if (m.round, m.arm) != (first.round, first.arm):
            raise MaskMismatchError(
                f"cannot mix round/arm {(m.round, m.arm)} with {(first.round, first.arm)}"
            )
        if m.vec.shape != first.vec.shape:
            raise MaskMismatchError(
                f"masked context of dimension {m.vec.shape[0]} does not match {first.vec.shape[0]}"
            )
    return MaskedContext(np.sum([m.vec for m in masked], axis=0), first.arm, first.round)


def aggregate_set(shares):
    """:func:`aggregate` for whole context sets: sums ``M`` masked
    ``(K, d)`` shares of one round."""
    shares = [np.asarray(s, dtype=np.float64) for s in shares]
    if not shares:
        raise MaskMismatchError("cannot aggregate an empty list of masked context sets")
    if any(s.shape != shares[0].shape for s in shares):
        raise MaskMismatchError(
            f"masked context sets disagree in shape: {sorted({s.shape for s in shares})}"
        )
    return np.sum(shares, axis=0)
