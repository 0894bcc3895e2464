"""
Protocol Runners
=================

Round loops of the federated bandits and their centralized and
partial-information baselines. Every round of a federated run follows the
same order: participants mask and send their local contexts, the active
participant aggregates and scores them, the chosen action goes to the
environment, the reward comes back to the active participant only and the
active participant updates its state with the masked chosen context.

All runs derive their random streams from ``cfg.seed`` (``mask``,
``policy``, ``env``, ``partition``), so a federated run and its
centralized twin see the same contexts, noise and normal draws.
"""

import numpy as np

from fedbandit.bandits import (
    LinTS,
    LinUCB,
    PartialPolicy,
    prefix_coordinates,
    random_coordinates,
)
from fedbandit.environments import EnvironmentExhausted, SyntheticEnv
from fedbandit.masking import MaskGenerator, aggregate_set, mask_local_set
from fedbandit.shared.numerics import Rng, cholesky
from fedbandit.shared.utils import logger

from .ledger import Ledger, MessageBus, MessageKind
from .participants import ACTIVE, ENVIRONMENT, build_roles
from .run_result import RoundRecord, RunResult


def selection_ops(uses_ts, K, d):
    """Unit operations the deciding party spends scoring and picking an arm."""
    if uses_ts:
        # factor, draw, K inner products, argmax
        return d * d + d ** 3 + K * d + K
    return K * d + d ** 3 + K * d * d + K


def update_ops(uses_ts, d):
    if uses_ts:
        return d + d ** 3 + d + d * d
    return d * d + d + d * d


def make_environment(cfg):
    """The synthetic environment of ``cfg``, seeded from its ``env`` stream."""
    spec = cfg.env
    return SyntheticEnv(
        cfg.d,
        cfg.K,
        cfg.stream_seed("env"),
        context_sigma2=spec.get("context_sigma2", 0.05),
        noise_sigma2=spec.get("noise_sigma2", 0.05),
        horizon=spec.get("horizon"),
    )


def make_policy(cfg, dim, factor_fn=None):
    if cfg.uses_ts:
        return LinTS(
            dim,
            Rng(cfg.stream_seed("policy")),
            v=cfg.v,
            lam=cfg.lam,
            inverse_mode=cfg.inverse_mode,
            factor_fn=factor_fn,
        )
    return LinUCB(dim, beta=cfg.beta, lam=cfg.lam, inverse_mode=cfg.inverse_mode)


def partial_coordinates(cfg):
    if cfg.partial_mode == "random":
        rng = Rng(cfg.stream_seed("partition", cfg.partition_index))
        return random_coordinates(cfg.d, cfg.partial_ratio, rng)
    return prefix_coordinates(cfg.d, cfg.partial_ratio)


def _play(cfg, env, policy, result, contexts_fn, ops_dim, observer=None, bus=None):
    """Shared round loop. ``contexts_fn(env_round)`` returns the context set
    the policy decides on.

    Selection and update operations are charged to the active participant
    for every algorithm, over ``ops_dim`` coordinates. Only federated runs
    pass a ``bus``; centralized and partial ledgers hold operations and no
    communication.
    """
    ledger = result.ledger
    for t in range(cfg.T):
        try:
            env_round = env.round(t)
        except EnvironmentExhausted as e:
            result.truncated = True
            logger.warning(f"Run truncated after {t} of {cfg.T} rounds: {e}")
            break
        contexts = contexts_fn(env_round)
        arm, scores = policy.select(contexts)
        ledger.charge(ACTIVE, selection_ops(cfg.uses_ts, cfg.K, ops_dim), "stage2")
        if bus is not None:
            bus.send(MessageKind.ACTION, ACTIVE, ENVIRONMENT, t, arm, 1)
            bus.drain(ENVIRONMENT)
        reward = env_round.reward(arm)
        if bus is not None:
            bus.send(MessageKind.REWARD, ENVIRONMENT, ACTIVE, t, reward, 1)
            (_, reward), = bus.drain(ACTIVE, MessageKind.REWARD)
        policy.update(contexts[arm], reward)
        ledger.charge(ACTIVE, update_ops(cfg.uses_ts, ops_dim), "stage3")
        result.records.append(
            RoundRecord(
                t,
                arm,
                reward,
                env_round.regret(arm),
                float(np.linalg.norm(policy.state.theta_hat)),
                tuple(scores) if cfg.record_scores else None,
            )
        )
        if observer is not None:
            observer(t, policy, env_round, arm)
    return result


def _run_federated(cfg, env, observer, mask_override, validate_mask=True):
    env = env if env is not None else make_environment(cfg)
    partition = cfg.dim_partition
    d, K, M = cfg.d, cfg.K, partition.num_participants
    result = RunResult(cfg)
    bus = MessageBus(result.ledger)

    pmg = MaskGenerator(
        partition,
        Rng(cfg.stream_seed("mask")),
        mode=cfg.pmg,
        q_override=mask_override,
        validate=validate_mask,
    )
    roles = build_roles(partition, pmg.host)
    pmg_index = roles[-1].index
    result.ledger.charge(pmg_index, d ** 3, "stage1")
    for shard in pmg.shards:
        bus.send(MessageKind.MASK_SHARD, pmg_index, shard.owner, 0, shard, shard.num_elements)
    shards = []
    for role in roles[:M]:
        (_, shard), = bus.drain(role.index, MessageKind.MASK_SHARD)
        shards.append(shard)
    result.mask = pmg.q

    def masked_contexts(env_round):
        t = env_round.t
        for j, local in enumerate(partition.split(env_round.contexts)):
            masked = mask_local_set(shards[j], local)
            result.ledger.charge(j, K * d * shards[j].local_dim, "stage2")
            bus.send(MessageKind.MASKED_CONTEXT, j, ACTIVE, t, masked, K * d)
        shares = [payload for _, payload in bus.drain(ACTIVE, MessageKind.MASKED_CONTEXT)]
        result.ledger.charge(ACTIVE, K * M * d, "stage2")
        return aggregate_set(shares)

    factor_fn = None
    if cfg.algorithm == "VFTS" and cfg.coupled_ts:
        q = pmg.q

        # test coupling: the factor Q·A with A the centralized Cholesky factor
        def factor_fn(state):
            central_inv = q.T @ state.LambdaInv @ q
            return q @ cholesky(0.5 * (central_inv + central_inv.T))

    policy = make_policy(cfg, d, factor_fn)
    logger.debug(f"Running {cfg.algorithm} with partition {partition} and {policy}")
    return _play(cfg, env, policy, result, masked_contexts, d, observer, bus)


def _require(cfg, algorithms):
    if cfg.algorithm not in algorithms:
        raise ValueError(f"this runner plays {algorithms}, not {cfg.algorithm}")


def run_vfucb(cfg, env=None, observer=None, mask_override=None, validate_mask=True):
    """Simulates VFUCB.

    Args:
        cfg (:class:`~fedbandit.RunConfig`): Run settings; ``algorithm`` must be ``VFUCB``.
        env (:class:`~fedbandit.environments.Environment`, `optional`):
            Defaults to the synthetic environment of ``cfg``.
        observer (:obj:`callable`, `optional`):
            Called as ``observer(t, policy, env_round, arm)`` after every round.
        mask_override (:obj:`np.ndarray`, `optional`): Orthogonal mask to use instead of a random one.
        validate_mask (:obj:`bool`, `optional`, defaults to :obj:`True`):
            Check that ``mask_override`` is orthogonal.

    Returns:
        :class:`RunResult`
    """
    _require(cfg, ("VFUCB",))
    return _run_federated(cfg, env, observer, mask_override, validate_mask)


def run_vfts(cfg, env=None, observer=None, mask_override=None, validate_mask=True):
    """Simulates VFTS. With ``cfg.coupled_ts`` the covariance factor is
    ``Q·A`` where ``A`` is the factor the centralized run uses, so the arm
    sequence matches centralized LinTS with the same seed."""
    _require(cfg, ("VFTS",))
    return _run_federated(cfg, env, observer, mask_override, validate_mask)


def run_centralized(cfg, env=None, observer=None):
    """LinUCB or LinTS on full contexts. No messages are exchanged; the
    ledger counts only the active participant's stage-2 and stage-3
    operations."""
    _require(cfg, ("LinUCB", "LinTS"))
    env = env if env is not None else make_environment(cfg)
    policy = make_policy(cfg, cfg.d)
    return _play(cfg, env, policy, RunResult(cfg), lambda r: r.contexts, cfg.d, observer)


def run_partial(cfg, env=None, observer=None):
    """LinUCB or LinTS restricted to a coordinate subset; regret is still
    measured against the full-information optimum."""
    _require(cfg, ("PartialLinUCB", "PartialLinTS"))
    env = env if env is not None else make_environment(cfg)
    coords = partial_coordinates(cfg)
    policy = PartialPolicy(make_policy(cfg, len(coords)), coords)
    result = RunResult(cfg, coordinates=coords)
    return _play(cfg, env, policy, result, lambda r: r.contexts, len(coords), observer)


RUNNERS = {
    "VFUCB": run_vfucb,
    "VFTS": run_vfts,
    "LinUCB": run_centralized,
    "LinTS": run_centralized,
    "PartialLinUCB": run_partial,
    "PartialLinTS": run_partial,
}


def run_simulation(cfg, env=None, observer=None, mask_override=None):
    """Runs ``cfg`` with the runner of its algorithm."""
    if cfg.is_federated:
        return RUNNERS[cfg.algorithm](cfg, env, observer, mask_override)
    if mask_override is not None:
        raise ValueError(f"{cfg.algorithm} does not use a mask")
    return RUNNERS[cfg.algorithm](cfg, env, observer)
