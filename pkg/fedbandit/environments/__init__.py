""".. _environments:

Environments: synthetic linear rewards and logged-data replay.
================================================================
"""

from .environment import Environment, EnvironmentExhausted, EnvRound
from .synthetic_env import SyntheticEnv, synth_round
from .replay_log import (
    ReplayLog,
    ReplayLogEntry,
    build_context,
    build_context_block,
    make_planted_log,
    read_cache,
    write_cache,
)
from .ingest import (
    IngestConfig,
    IngestError,
    IngestStats,
    cantor_pair,
    ingest_log,
    pair_values,
    read_criteo_rows,
    top_label_set,
)
from .replay_evaluator import (
    ReplayEvaluation,
    ReplayEvaluationError,
    ReplayResult,
    random_baseline,
    replay,
    replay_evaluate,
)
