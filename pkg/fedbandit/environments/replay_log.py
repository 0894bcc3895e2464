"""
Replay Logs
============

Logged (user, item label, reward) events, the outer-addition context
construction and the on-disk cache written by ingestion.
"""

from dataclasses import dataclass, field
import os

import filelock
import numpy as np
import pandas as pd

from fedbandit.shared.numerics import Rng, as_vector
from fedbandit.shared.utils import logger

CACHE_VERSION = 1
CACHE_MAGIC = "# fedbandit-replay-cache"


@dataclass(frozen=True)
class ReplayLogEntry:
    user_features: np.ndarray
    item_features: np.ndarray
    item_label: int
    reward: int


@dataclass
class ReplayLog:
    """Columnar replay log. Arms are the distinct item labels in ascending
    order; ``arms[n]`` is the arm index of the logged label of event ``n``.

    Args:
        users (:obj:`np.ndarray`): ``(N, d_u)`` user features.
        arms (:obj:`np.ndarray`): ``(N,)`` logged arm indices.
        rewards (:obj:`np.ndarray`): ``(N,)`` binary rewards.
        labels (:obj:`np.ndarray`): ``(K,)`` item labels, ascending.
        items (:obj:`np.ndarray`): ``(K, d_i)`` item features per label.
    """

    users: np.ndarray
    arms: np.ndarray
    rewards: np.ndarray
    labels: np.ndarray
    items: np.ndarray
    planted_theta: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.users = np.asarray(self.users, dtype=np.float64)
        self.arms = np.asarray(self.arms, dtype=np.int64)
        self.rewards = np.asarray(self.rewards, dtype=np.int64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.items = np.asarray(self.items, dtype=np.float64)
        n = self.users.shape[0]
        if self.users.ndim != 2 or self.items.ndim != 2:
            raise ValueError("user and item features must be 2-D arrays")
        if self.arms.shape != (n,) or self.rewards.shape != (n,):
            raise ValueError("arms and rewards must have one entry per event")
        if self.labels.shape != (self.items.shape[0],):
            raise ValueError("every label needs one item feature row")
        if n and (self.arms.min() < 0 or self.arms.max() >= len(self.labels)):
            raise ValueError("logged arm index out of range")

    @classmethod
    def from_entries(cls, entries):
        entries = list(entries)
        labels = sorted({int(e.item_label) for e in entries})
        index = {label: k for k, label in enumerate(labels)}
        items = {}
        for e in entries:
            items.setdefault(int(e.item_label), np.asarray(e.item_features, dtype=np.float64))
        d_u = len(entries[0].user_features) if entries else 0
        return cls(
            users=np.array([e.user_features for e in entries]).reshape(len(entries), d_u),
            arms=np.array([index[int(e.item_label)] for e in entries], dtype=np.int64),
            rewards=np.array([e.reward for e in entries], dtype=np.int64),
            labels=np.array(labels, dtype=np.int64),
            items=np.array([items[label] for label in labels]),
        )

    def __len__(self):
        return self.users.shape[0]

    def __getitem__(self, n):
        arm = self.arms[n]
        return ReplayLogEntry(
            self.users[n], self.items[arm], int(self.labels[arm]), int(self.rewards[n])
        )

    def __iter__(self):
        return (self[n] for n in range(len(self)))

    @property
    def num_arms(self):
        return len(self.labels)

    @property
    def d_user(self):
        return self.users.shape[1]

    @property
    def d_item(self):
        return self.items.shape[1]

    @property
    def d(self):
        return self.d_user * self.d_item

    def contexts(self, start, stop):
        """``(B, K, d)`` candidate contexts for events ``start..stop``."""
        return build_context_block(self.users[start:stop], self.items)


def build_context(user, item):
    """Outer addition of user and item features, flattened row-major:
    entry ``i * d_i + j`` is ``user[i] + item[j]``."""
    user = as_vector(user, name="user features")
    item = as_vector(item, name="item features")
    return np.add.outer(user, item).ravel()


def build_context_block(users, items):
    """:func:`build_context` for every (user row, item row) pair. Returns
    ``(B, K, d_u * d_i)``."""
    users = np.asarray(users, dtype=np.float64)
    items = np.asarray(items, dtype=np.float64)
    out = users[:, None, :, None] + items[None, :, None, :]
    return out.reshape(users.shape[0], items.shape[0], users.shape[1] * items.shape[1])


def make_planted_log(
    num_events=200_000,
    num_arms=40,
    d_user=1,
    d_item=10,
    user_scale=0.1,
    seed=0,
):
    """Generates a log whose click probability is linear in the
    outer-addition context, logged under a uniform-random policy.

    ``θ*`` is non-negative with weights growing with coordinate index and
    scaled so every click probability lies in ``[0, 1]``.
    """
    if min(num_events, num_arms, d_user, d_item) < 1:
        raise ValueError("planted log sizes must be positive")
    rng = Rng(seed)
    items = rng.uniform(size=(num_arms, d_item))
    users = user_scale * rng.uniform(size=(num_events, d_user))
    arms = rng.integers(num_arms, size=num_events)
    weights = np.tile(np.arange(1, d_item + 1, dtype=np.float64) ** 2, d_user)
    theta = weights / (weights.sum() * (user_scale + 1.0))
    probs = np.einsum("nd,d->n", build_context_block(users, items)[np.arange(num_events), arms], theta)
    rewards = rng.bernoulli(np.clip(probs, 0.0, 1.0))
    return ReplayLog(users, arms, rewards, np.arange(num_arms), items, planted_theta=theta)


def write_cache(log, path):
    """Writes ``log`` as CSV behind a versioned header line."""
    lock = filelock.FileLock(path + ".lock")
    with lock:
        frame = pd.DataFrame(log.users, columns=[f"u{i}" for i in range(log.d_user)])
        items = log.items[log.arms]
        for j in range(log.d_item):
            frame[f"i{j}"] = items[:, j]
        frame["label"] = log.labels[log.arms]
        frame["reward"] = log.rewards
        tmp_path = path + ".tmp"
        with open(tmp_path, "w", newline="\n") as f:
            f.write(f"{CACHE_MAGIC} v{CACHE_VERSION} d_u={log.d_user} d_i={log.d_item}\n")
            frame.to_csv(f, index=False, float_format="%.17g", lineterminator="\n")
        os.replace(tmp_path, path)
    logger.info(f"Wrote {len(log)} replay events to {path}")


def read_cache(path):
    """Reads a cache written by :func:`write_cache`.

    Raises:
        ValueError: the file is missing the header or has another version.
    """
    lock = filelock.FileLock(path + ".lock")
    with lock:
        with open(path, "r") as f:
            header = f.readline().split()
            if len(header) < 3 or " ".join(header[:2]) != CACHE_MAGIC:
                raise ValueError(f"{path} is not a fedbandit replay cache")
            if header[2] != f"v{CACHE_VERSION}":
                raise ValueError(
                    f"{path} has cache version {header[2]}, expected v{CACHE_VERSION}"
                )
            frame = pd.read_csv(f, float_precision="round_trip")
    user_cols = [c for c in frame.columns if c.startswith("u")]
    item_cols = [c for c in frame.columns if c.startswith("i")]
    labels, arms = np.unique(frame["label"].to_numpy(dtype=np.int64), return_inverse=True)
    first = np.array([np.argmax(arms == k) for k in range(len(labels))], dtype=np.int64)
    return ReplayLog(
        users=frame[user_cols].to_numpy(dtype=np.float64),
        arms=arms,
        rewards=frame["reward"].to_numpy(dtype=np.int64),
        labels=labels,
        items=frame[item_cols].to_numpy(dtype=np.float64)[first],
    )
