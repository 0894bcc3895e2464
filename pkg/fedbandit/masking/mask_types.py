"""
Mask Types
===========

Dimension partitions, the per-participant slices of the orthogonal mask and
masked context vectors.
"""

from dataclasses import dataclass

import numpy as np

from fedbandit.shared.numerics import DimensionMismatchError, as_vector


class MaskMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class DimPartition:
    """Split of the global context dimension ``d`` into per-participant
    local dimensions ``d_1..d_M``. Participant 0 is the active participant.

    Args:
        dims (:obj:`tuple[int]`): Positive local dimensions, in participant order.
    """

    dims: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) < 1:
            raise ValueError("`dims` must name at least one participant.")
        if any(d < 1 for d in self.dims):
            raise ValueError(f"every local dimension must be positive, got {self.dims}.")

    @classmethod
    def even(cls, d, num_participants):
        """Splits ``d`` as evenly as possible, giving the remainder to the
        leading participants."""
        if not 1 <= num_participants <= d:
            raise ValueError(
                f"cannot split dimension {d} among {num_participants} participants"
            )
        base, extra = divmod(d, num_participants)
        return cls(tuple(base + (j < extra) for j in range(num_participants)))

    @property
    def d(self):
        return sum(self.dims)

    @property
    def num_participants(self):
        return len(self.dims)

    @property
    def offsets(self):
        """Start column of each participant's block, plus ``d`` at the end."""
        return np.concatenate([[0], np.cumsum(self.dims)]).astype(int)

    def slices(self):
        off = self.offsets
        return [slice(off[j], off[j + 1]) for j in range(self.num_participants)]

    def split(self, x):
        """Cuts a global vector (or the last axis of an array) into the
        local pieces each participant holds."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape[-1] != self.d:
            raise DimensionMismatchError(
                f"context of dimension {x.shape[-1]} does not match partition of {self.d}"
            )
        return [x[..., s] for s in self.slices()]

    def __str__(self):
        return "x".join(str(d) for d in self.dims)


@dataclass(frozen=True)
class MaskShard:
    """Columns of the mask ``Q`` owned by one participant."""

    owner: int
    block: np.ndarray

    def __post_init__(self):
        block = np.array(self.block, dtype=np.float64)
        if block.ndim != 2 or block.shape[1] > block.shape[0]:
            raise DimensionMismatchError(f"mask shard must be d x d_j, got {block.shape}")
        block.setflags(write=False)
        object.__setattr__(self, "block", block)

    @property
    def d(self):
        return self.block.shape[0]

    @property
    def local_dim(self):
        return self.block.shape[1]

    @property
    def num_elements(self):
        return self.block.size


@dataclass(frozen=True)
class MaskedContext:
    """A masked vector in the global coordinates of ``Q``; always has
    dimension ``d`` whatever the sender's local dimension."""

    vec: np.ndarray
    arm: int
    round: int

    def __post_init__(self):
        object.__setattr__(self, "vec", as_vector(self.vec, name="masked context"))
