"""
Log Ingestion
==============

Turns Criteo-layout rows (a binary response, 13 numerical user columns and
26 categorical columns) into a :class:`ReplayLog`:

1. the 26 categoricals are cut into contiguous groups and each group is
   hashed with seeded FNV-1a modulo a bucket count,
2. the hashed values are Cantor-paired left to right into one item label,
3. only rows whose label is among the most frequent labels are kept
   (frequency ties go to the smaller label),
4. numerical user columns are min-max scaled to ``[0, 1]`` over the kept rows
   and multiplied by per-feature scaling factors,
5. item features are the hashed values divided by ``buckets - 1``.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from fedbandit.shared.utils import fnv1a_64, logger

from .replay_log import ReplayLog

NUM_NUMERICAL = 13
NUM_CATEGORICAL = 26
NUM_FIELDS = 1 + NUM_NUMERICAL + NUM_CATEGORICAL
MAX_HASH_BUCKETS = 1 << 15


class IngestError(ValueError):
    pass


@dataclass
class IngestConfig:
    """Ingestion settings.

    Args:
        n_hash_values (:obj:`int`): Number of categorical groups, and so item features.
        hash_buckets (:obj:`int`): Bucket count for every hashed value.
        top_labels (:obj:`int`): Number of most frequent labels kept.
        user_columns (:obj:`tuple[int]`): Numerical columns used as user features.
        user_scaling_factors (:obj:`tuple[float]`): One factor per user column; defaults to all 1.0.
        minmax_ranges (:obj:`tuple[tuple[float, float]]`):
            Fixed ``(low, high)`` per user column; computed from the kept rows when omitted.
        hash_seed (:obj:`int`): Seed of the FNV-1a hash.
    """

    n_hash_values: int = 3
    hash_buckets: int = 10
    top_labels: int = 40
    user_columns: tuple = tuple(range(NUM_NUMERICAL))
    user_scaling_factors: tuple = None
    minmax_ranges: tuple = None
    hash_seed: int = 0

    def __post_init__(self):
        self.user_columns = tuple(int(c) for c in self.user_columns)
        if not 1 <= self.n_hash_values <= NUM_CATEGORICAL:
            raise ValueError(
                f"`n_hash_values` must be in [1, {NUM_CATEGORICAL}], got {self.n_hash_values}."
            )
        if not 2 <= self.hash_buckets <= MAX_HASH_BUCKETS:
            raise ValueError(
                f"`hash_buckets` must be in [2, {MAX_HASH_BUCKETS}], got {self.hash_buckets}."
            )
        if pair_values([self.hash_buckets - 1] * self.n_hash_values) >= 1 << 63:
            raise ValueError("paired labels would not fit in 64 bits; lower `hash_buckets`.")
        if self.top_labels < 1:
            raise ValueError(f"`top_labels` must be at least 1, got {self.top_labels}.")
        if not self.user_columns or any(
            not 0 <= c < NUM_NUMERICAL for c in self.user_columns
        ):
            raise ValueError(f"`user_columns` must index the {NUM_NUMERICAL} numerical columns.")
        if self.user_scaling_factors is None:
            self.user_scaling_factors = (1.0,) * len(self.user_columns)
        self.user_scaling_factors = tuple(float(s) for s in self.user_scaling_factors)
        if len(self.user_scaling_factors) != len(self.user_columns):
            raise ValueError("`user_scaling_factors` needs one factor per user column.")
        if self.minmax_ranges is not None:
            self.minmax_ranges = tuple(tuple(map(float, r)) for r in self.minmax_ranges)
            if len(self.minmax_ranges) != len(self.user_columns):
                raise ValueError("`minmax_ranges` needs one (low, high) pair per user column.")

    @property
    def groups(self):
        """Contiguous categorical column groups, larger groups first."""
        base, extra = divmod(NUM_CATEGORICAL, self.n_hash_values)
        sizes = [base + (g < extra) for g in range(self.n_hash_values)]
        offsets = np.concatenate([[0], np.cumsum(sizes)])
        return [(offsets[g], offsets[g + 1]) for g in range(self.n_hash_values)]


@dataclass
class IngestStats:
    rows_read: int = 0
    rows_malformed: int = 0
    rows_kept: int = 0
    distinct_labels: int = 0
    label_counts: dict = field(default_factory=dict, repr=False)


def cantor_pair(a, b):
    return (a + b) * (a + b + 1) // 2 + b


def pair_values(values):
    """Cantor pairing applied left to right."""
    label = values[0]
    for v in values[1:]:
        label = cantor_pair(label, v)
    return label


def hash_categoricals(categoricals, cfg):
    """The ``n_hash_values`` bucketed hashes of one row's categoricals."""
    return [
        fnv1a_64("\x1f".join(categoricals[lo:hi]), seed=cfg.hash_seed) % cfg.hash_buckets
        for lo, hi in cfg.groups
    ]


def _parse_row(row):
    if len(row) != NUM_FIELDS:
        return None
    response = row[0].strip()
    if response not in ("0", "1"):
        return None
    try:
        numerics = [float(v) if v.strip() else np.nan for v in row[1 : 1 + NUM_NUMERICAL]]
    except ValueError:
        return None
    if not all(np.isnan(v) or np.isfinite(v) for v in numerics):
        return None
    return int(response), numerics, [v.strip() for v in row[1 + NUM_NUMERICAL :]]


def top_label_set(label_counts, top_labels):
    """Most frequent labels; at the cut-off, smaller labels win ties."""
    ranked = sorted(label_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {label for label, _ in ranked[:top_labels]}


def ingest_log(rows, cfg=None, stats=None):
    """Builds a :class:`ReplayLog` from raw Criteo-layout rows.

    Args:
        rows: Iterable of field lists (strings).
        cfg (:class:`IngestConfig`, `optional`): Defaults to :obj:`IngestConfig()`.
        stats (:class:`IngestStats`, `optional`): Filled with row counters.

    Raises:
        IngestError: no row survives.
    """
    cfg = cfg or IngestConfig()
    stats = stats if stats is not None else IngestStats()
    responses, users, hashes, labels = [], [], [], []
    for row in rows:
        stats.rows_read += 1
        parsed = _parse_row(row)
        if parsed is None:
            stats.rows_malformed += 1
            continue
        response, numerics, categoricals = parsed
        hashed = hash_categoricals(categoricals, cfg)
        responses.append(response)
        users.append([numerics[c] for c in cfg.user_columns])
        hashes.append(hashed)
        labels.append(pair_values(hashed))
    if stats.rows_malformed:
        logger.warning(f"Skipped {stats.rows_malformed} malformed rows out of {stats.rows_read}")
    if not labels:
        raise IngestError("no well-formed rows to ingest")

    counts = Counter(labels)
    stats.label_counts = dict(counts)
    stats.distinct_labels = len(counts)
    keep_labels = top_label_set(counts, cfg.top_labels)
    keep = np.array([label in keep_labels for label in labels])
    stats.rows_kept = int(keep.sum())

    users = np.array(users, dtype=np.float64)[keep]
    users = _minmax(users, cfg) * np.array(cfg.user_scaling_factors)
    item_labels = np.array(labels, dtype=np.int64)[keep]
    item_hashes = np.array(hashes, dtype=np.float64)[keep]

    sorted_labels, arms = np.unique(item_labels, return_inverse=True)
    first = np.array([np.argmax(arms == k) for k in range(len(sorted_labels))], dtype=np.int64)
    logger.info(
        f"Ingested {stats.rows_kept} of {stats.rows_read} rows over {len(sorted_labels)} item labels"
    )
    return ReplayLog(
        users=users,
        arms=arms.reshape(-1),
        rewards=np.array(responses, dtype=np.int64)[keep],
        labels=sorted_labels,
        items=item_hashes[first] / (cfg.hash_buckets - 1),
    )


def _minmax(columns, cfg):
    """Scales each column to ``[0, 1]``. Missing values take the column
    minimum; a constant column maps to 0."""
    out = np.empty_like(columns)
    for c in range(columns.shape[1]):
        col = columns[:, c]
        if cfg.minmax_ranges is not None:
            low, high = cfg.minmax_ranges[c]
        else:
            present = col[~np.isnan(col)]
            low, high = (present.min(), present.max()) if present.size else (0.0, 0.0)
        col = np.where(np.isnan(col), low, col)
        span = high - low
        out[:, c] = np.clip((col - low) / span, 0.0, 1.0) if span > 0 else 0.0
    return out


def read_criteo_rows(path, delimiter="\t"):
    """Yields the fields of every line of a delimiter-separated file."""
    with open(path, "r", encoding="utf8", errors="replace") as f:
        for line in f:
            line = line.rstrip("\r\n")
            if line:
                yield line.split(delimiter)
