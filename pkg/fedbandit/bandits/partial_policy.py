"""
PartialPolicy
==============
"""

import numpy as np

from fedbandit.shared.utils import ReprMixin


def prefix_coordinates(dim, ratio):
    """First ``ceil(ratio * dim)`` coordinates."""
    if not 0 < ratio <= 1:
        raise ValueError(f"partial ratio must be in (0, 1], got {ratio}")
    return np.arange(int(np.ceil(round(ratio * dim, 9))))


def random_coordinates(dim, ratio, rng):
    """A sorted random subset of ``ceil(ratio * dim)`` coordinates."""
    keep = len(prefix_coordinates(dim, ratio))
    return np.sort(rng.permutation(dim)[:keep])


class PartialPolicy(ReprMixin):
    """Runs ``inner`` on a fixed coordinate subset of every context, the way
    a single department would with only its own features.

    Args:
        inner: A policy built for dimension ``len(coordinates)``.
        coordinates (:obj:`np.ndarray`): Indices of the visible coordinates.
    """

    def __init__(self, inner, coordinates):
        self.inner = inner
        self.coordinates = np.asarray(coordinates, dtype=np.int64)
        if len(self.coordinates) != inner.dim:
            raise ValueError(
                f"policy of dimension {inner.dim} cannot see {len(self.coordinates)} coordinates"
            )

    @property
    def state(self):
        return self.inner.state

    def select(self, contexts):
        return self.inner.select(np.asarray(contexts)[:, self.coordinates])

    def choose_block(self, contexts):
        return self.inner.choose_block(np.asarray(contexts)[..., self.coordinates])

    def update(self, x, r):
        self.inner.update(np.asarray(x)[self.coordinates], r)

    def reset(self):
        self.inner.reset()

    def extra_repr_keys(self):
        return ["inner"]
