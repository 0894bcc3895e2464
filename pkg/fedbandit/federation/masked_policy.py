"""
MaskedPolicy Class
===================
"""

import numpy as np

from fedbandit.masking import aggregate_set
from fedbandit.shared.utils import ReprMixin


class MaskedPolicy(ReprMixin):
    """Drives a policy on masked contexts for replay evaluation: every
    participant masks its slice of the candidate contexts with its shard and
    the policy sees only the aggregated masked vectors.

    Args:
        inner: A policy of the global dimension ``d``.
        generator (:class:`~fedbandit.masking.MaskGenerator`): Holds the mask and its shards.
    """

    def __init__(self, inner, generator):
        if inner.dim != generator.d:
            raise ValueError(
                f"policy of dimension {inner.dim} cannot use a mask of dimension {generator.d}"
            )
        self.inner = inner
        self.generator = generator

    @property
    def state(self):
        return self.inner.state

    def mask(self, contexts):
        contexts = np.asarray(contexts, dtype=np.float64)
        pieces = self.generator.partition.split(contexts)
        return aggregate_set(
            [piece @ shard.block.T for piece, shard in zip(pieces, self.generator.shards)]
        )

    def select(self, contexts):
        return self.inner.select(self.mask(contexts))

    def choose_block(self, contexts):
        return self.inner.choose_block(self.mask(contexts))

    def update(self, x, r):
        self.inner.update(self.mask(x), r)

    def reset(self):
        self.inner.reset()

    def extra_repr_keys(self):
        return ["inner", "generator"]
