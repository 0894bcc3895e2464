"""
MaskGenerator Class
====================
"""

import os

import numpy as np

from fedbandit.shared.numerics import (
    as_matrix,
    orthogonality_error,
    random_orthogonal,
    save_matrix,
)
from fedbandit.shared.tolerances import TOLERANCES
from fedbandit.shared.utils import ReprMixin

from .mask_ops import partition_mask

PMG_MODES = ("third_party", "participant")


class MaskGenerator(ReprMixin):
    """The privacy mask generator (PMG). Draws one orthogonal mask ``Q`` per
    run and hands every participant its column block.

    Args:
        partition (:class:`DimPartition`): Local dimensions of the participants.
        rng (:class:`~fedbandit.shared.numerics.Rng`): The run's mask stream.
        mode (:obj:`str`, `optional`, defaults to :obj:`"third_party"`):
            ``"third_party"`` makes the PMG a standalone party;
            ``"participant"`` gives the role to a randomly chosen passive
            participant. The protocol still sends that participant its own
            shard as a message, and the ledger counts it.
        q_override (:obj:`np.ndarray`, `optional`): Use this mask instead of drawing one.
        validate (:obj:`bool`, `optional`, defaults to :obj:`True`):
            Reject a non-orthogonal override. Disabled only for fault injection.
    """

    def __init__(self, partition, rng, mode="third_party", q_override=None, validate=True):
        if mode not in PMG_MODES:
            raise ValueError(f"`pmg` must be one of {PMG_MODES}, got {mode}.")
        if mode == "participant" and partition.num_participants < 2:
            raise ValueError("a participant PMG needs at least one passive participant")
        self.partition = partition
        self.mode = mode
        if q_override is not None:
            q = as_matrix(q_override, name="mask override")
            if validate and orthogonality_error(q) > TOLERANCES.orthogonality:
                raise ValueError("mask override is not orthogonal")
        else:
            q = random_orthogonal(partition.d, rng)
        self.q = q
        self.host = None
        if mode == "participant":
            self.host = 1 + int(rng.integers(partition.num_participants - 1))
        self.shards = partition_mask(self.q, partition)

    @property
    def d(self):
        return self.partition.d

    def shard_for(self, owner):
        return self.shards[owner]

    def save_shards(self, directory):
        """Writes every shard as ``shard_<j>.fbmx`` under ``directory``."""
        os.makedirs(directory, exist_ok=True)
        paths = []
        for shard in self.shards:
            path = os.path.join(directory, f"shard_{shard.owner}.fbmx")
            save_matrix(path, np.asarray(shard.block))
            paths.append(path)
        return paths

    def extra_repr_keys(self):
        return ["mode", "host"]
