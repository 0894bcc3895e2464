"""Welcome to the API references for fedbandit!

What is fedbandit?

fedbandit simulates vertically federated linear contextual bandits. Several
participants each hold a slice of every arm's context; an orthogonal mask
lets an active participant run LinUCB or linear Thompson sampling on the
masked aggregate with exactly the decisions a centralized learner would make.

fedbandit also ships the centralized and partial-view baselines, a replay
evaluator for logged click data, analytical cost models and an invariant
verifier.
"""
from .run_config import RunConfig
from .experiment_spec import ExperimentSpec, ReplayCell, ReplaySource, load_spec
from .experiment_runner import ExperimentRunner
from .metrics import Metric

from . import (
    bandits,
    commands,
    costs,
    environments,
    federation,
    loggers,
    masking,
    metrics,
    shared,
    verification,
)


name = "fedbandit"
