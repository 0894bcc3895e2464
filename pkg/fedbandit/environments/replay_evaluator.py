"""
Replay Evaluator
=================

Unbiased offline evaluation on a log collected under a uniform-random
logging policy: the policy is shown every candidate arm for a logged user,
and an event counts only when the policy picks the logged item. Matched
events credit the logged reward and update the policy; all other events
are skipped.
"""

from dataclasses import dataclass, field

import numpy as np

from fedbandit.bandits import RandomPolicy
from fedbandit.shared.numerics import Rng
from fedbandit.shared.utils import derive_seed, logger


class ReplayEvaluationError(ValueError):
    pass


@dataclass
class ReplayResult:
    """CTR of one replay. ``trace`` holds ``(events_seen, credited, ctr)``
    checkpoints."""

    credited: int
    clicks: int
    events: int
    trace: list = field(default_factory=list, repr=False)

    @property
    def ctr(self):
        return self.clicks / self.credited

    @property
    def match_rate(self):
        return self.credited / self.events


def replay(policy, log, block_size=None, checkpoints=20):
    """Replays ``log`` through ``policy`` and returns its :class:`ReplayResult`.

    Candidate contexts are scored one block of events at a time; at the
    first matched event of a block the policy is updated and scoring
    restarts at the next event. A policy whose choices depend only on its
    state and the contexts gets the same result as an event-by-event
    replay; a randomized policy draws for every scored event, so its result
    depends on ``block_size``.

    Raises:
        ReplayEvaluationError: the log is empty or no event was credited.
    """
    n = len(log)
    if n == 0:
        raise ReplayEvaluationError("cannot replay an empty log")
    block_size = block_size or 2 * log.num_arms
    every = max(1, n // checkpoints)
    credited = clicks = 0
    trace = []
    next_checkpoint = every
    pos = 0
    while pos < n:
        stop = min(n, pos + block_size)
        contexts = log.contexts(pos, stop)
        choices = np.asarray(policy.choose_block(contexts))
        matches = np.flatnonzero(choices == log.arms[pos:stop])
        if matches.size:
            m = int(matches[0])
            credited += 1
            reward = int(log.rewards[pos + m])
            clicks += reward
            policy.update(contexts[m, choices[m]], reward)
            pos += m + 1
        else:
            pos = stop
        while pos >= next_checkpoint and next_checkpoint <= n:
            trace.append((next_checkpoint, credited, clicks / credited if credited else 0.0))
            next_checkpoint += every
    if credited == 0:
        raise ReplayEvaluationError("no logged event matched the policy's choices")
    return ReplayResult(credited, clicks, n, trace)


@dataclass
class ReplayEvaluation:
    policy: ReplayResult
    random_ctrs: list

    @property
    def ctr(self):
        return self.policy.ctr

    @property
    def random_ctr(self):
        return float(np.mean(self.random_ctrs))

    @property
    def relative_ctr(self):
        return self.ctr / self.random_ctr


def random_baseline(log, seed=0, num_seeds=5, block_size=None):
    """CTRs of a uniform-random policy replayed under ``num_seeds`` seeds."""
    return [
        replay(RandomPolicy(Rng(derive_seed(seed, "baseline", i))), log, block_size).ctr
        for i in range(num_seeds)
    ]


def replay_evaluate(policy, log, seed=0, num_baseline_seeds=5, block_size=None, baseline=None):
    """Replays ``policy`` and normalizes its CTR by the random-policy CTR.

    Args:
        baseline (:obj:`list[float]`, `optional`): Precomputed random-policy CTRs.

    Raises:
        ReplayEvaluationError: nothing was credited, or the random CTR is zero.
    """
    result = replay(policy, log, block_size)
    random_ctrs = baseline if baseline is not None else random_baseline(
        log, seed, num_baseline_seeds, block_size
    )
    evaluation = ReplayEvaluation(result, list(random_ctrs))
    if evaluation.random_ctr == 0:
        raise ReplayEvaluationError("random policy CTR is zero; relative CTR is undefined")
    logger.debug(
        f"Replay credited {result.credited}/{result.events} events, relative CTR {evaluation.relative_ctr:.4f}"
    )
    return evaluation
