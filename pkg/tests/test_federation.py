import numpy as np
import pytest

from fedbandit import RunConfig
from fedbandit.bandits import LinUCB
from fedbandit.costs import CostParams, comm_elements, compute_ops
from fedbandit.environments import Environment, EnvRound, make_planted_log, replay
from fedbandit.federation import (
    ACTIVE,
    ENVIRONMENT,
    Ledger,
    MaskedPolicy,
    MessageBus,
    MessageKind,
    RoleKind,
    build_roles,
    run_centralized,
    run_partial,
    run_simulation,
    run_vfts,
    run_vfucb,
)
from fedbandit.masking import DimPartition, MaskGenerator
from fedbandit.metrics import theta_norm_diff
from fedbandit.shared.numerics import Rng


def small_config(**changes):
    values = dict(algorithm="VFUCB", T=40, K=4, d=6, partition=(2, 2, 2), seed=7)
    values.update(changes)
    return RunConfig(**values)


def test_roles():
    roles = build_roles(DimPartition((2, 3, 1)))
    assert [r.kind for r in roles] == [
        RoleKind.ACTIVE,
        RoleKind.PASSIVE,
        RoleKind.PASSIVE,
        RoleKind.MASK_GENERATOR,
    ]
    assert roles[-1].index == 3
    assert build_roles(DimPartition((2, 3, 1)), pmg_host=2)[-1].index == 2
    with pytest.raises(ValueError):
        build_roles(DimPartition((2, 3)), pmg_host=0)


def test_ledger_and_bus():
    bus = MessageBus(Ledger())
    bus.send(MessageKind.MASKED_CONTEXT, 1, ACTIVE, 0, "a", 12)
    bus.send(MessageKind.MASKED_CONTEXT, 2, ACTIVE, 0, "b", 12)
    bus.send(MessageKind.REWARD, ENVIRONMENT, ACTIVE, 0, 1.0, 1)
    assert bus.pending(ACTIVE) == 3
    shares = bus.drain(ACTIVE, MessageKind.MASKED_CONTEXT)
    assert [payload for _, payload in shares] == ["a", "b"]
    assert bus.pending(ACTIVE) == 1
    ((message, reward),) = bus.drain(ACTIVE)
    assert message.kind is MessageKind.REWARD and reward == 1.0
    ledger = bus.ledger
    assert ledger.total_elements == 24 and ledger.total_bytes == 192
    assert ledger.environment_elements == 1
    assert ledger.bytes_sent(1, ACTIVE) == 96
    assert ledger.num_messages == 3
    ledger.charge(ACTIVE, 5, "stage2")
    assert ledger.total_ops == 5
    with pytest.raises(ValueError):
        ledger.charge(ACTIVE, -1, "stage2")


def test_ledger_matches_closed_form():
    cfg = small_config(T=50, K=3, d=4, partition=(2, 2))
    result = run_vfucb(cfg)
    assert result.ledger.total_elements == 4 * 4 + 50 * 3 * 2 * 4
    assert result.ledger.environment_elements == 2 * 50
    p = CostParams(T=50, K=3, M=2, d=4)
    assert result.ledger.total_elements == comm_elements(p)
    assert result.ledger.total_ops == compute_ops("VFUCB", p).total_ops
    assert result.ledger.ops_by_stage["stage1"] == 64


@pytest.mark.parametrize("algorithm", ["LinUCB", "LinTS", "PartialLinUCB"])
def test_baseline_ledgers_hold_operations_only(algorithm):
    from fedbandit.federation import selection_ops, update_ops

    cfg = small_config(algorithm=algorithm, partial_ratio=0.5 if "Partial" in algorithm else 1.0)
    result = run_simulation(cfg)
    dim = 3 if "Partial" in algorithm else cfg.d
    assert result.ledger.total_elements == 0
    assert result.ledger.environment_elements == 0
    assert result.ledger.num_messages == 0
    assert result.ledger.ops_by_stage["stage1"] == 0
    assert result.ledger.ops_by_stage["stage2"] == cfg.T * selection_ops(cfg.uses_ts, cfg.K, dim)
    assert result.ledger.ops_by_stage["stage3"] == cfg.T * update_ops(cfg.uses_ts, dim)



@pytest.mark.parametrize("pmg", ["third_party", "participant"])
def test_ledger_counts_every_mask_shard(pmg):
    cfg = small_config(algorithm="VFTS", pmg=pmg)
    result = run_vfts(cfg)
    p = CostParams(T=cfg.T, K=cfg.K, M=3, d=cfg.d)
    assert result.ledger.total_elements == comm_elements(p)
    assert result.ledger.total_ops == compute_ops("VFTS", p).total_ops


def test_single_participant_identity_mask():
    cfg = small_config(d=5, partition=(5,), T=30)
    fed = run_vfucb(cfg, mask_override=np.eye(5))
    cen = run_centralized(cfg.twin())
    assert np.array_equal(fed.arms, cen.arms)
    assert fed.ledger.total_elements - 25 == 30 * cfg.K * 5
    assert fed.ledger.bytes_sent(ACTIVE, ACTIVE) == 8 * 30 * cfg.K * 5


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_vfucb_is_lossless(seed):
    cfg = RunConfig(algorithm="VFUCB", T=200, K=10, d=20, partition=(5, 5, 5, 5), seed=seed)
    thetas = []
    fed = run_vfucb(cfg, observer=lambda t, p, r, a: thetas.append(p.state.theta_hat.copy()))
    central = []
    cen = run_centralized(
        cfg.twin(), observer=lambda t, p, r, a: central.append(p.state.theta_hat.copy())
    )
    assert np.array_equal(fed.arms, cen.arms)
    assert np.allclose(fed.cumulative_regret, cen.cumulative_regret)
    for masked, raw in zip(thetas, central):
        assert np.max(np.abs(masked - fed.mask @ raw)) <= 1e-8
    assert np.max(theta_norm_diff(fed, cen)) <= 1e-8


def test_coupled_vfts_is_lossless():
    cfg = RunConfig(
        algorithm="VFTS",
        T=200,
        K=10,
        d=20,
        partition=(10, 10),
        seed=4,
        coupled_ts=True,
        record_scores=True,
    )
    fed = run_vfts(cfg)
    cen = run_centralized(cfg.twin())
    assert np.array_equal(fed.arms, cen.arms)
    for f, c in zip(fed.records, cen.records):
        assert np.allclose(
            [s.value for s in f.scores],
            [s.value for s in c.scores],
            rtol=1e-8,
            atol=1e-10,
        )


class TwoArms(Environment):
    """Two fixed orthogonal arms with equal expected reward."""

    d = 2
    num_arms = 2

    def round(self, t):
        return EnvRound(t, np.eye(2), np.array([0.5, 0.5]), 0.0)


def test_uncoupled_vfts_matches_lints_in_distribution():
    fed_last, cen_last = [], []
    for seed in range(200):
        cfg = RunConfig(algorithm="VFTS", T=5, K=2, d=2, partition=(1, 1), v=1.0, seed=seed)
        fed_last.append(run_vfts(cfg, env=TwoArms()).arms[-1] == 0)
        cen_last.append(run_centralized(cfg.twin(), env=TwoArms()).arms[-1] == 0)
    p_fed, p_cen = np.mean(fed_last), np.mean(cen_last)
    se = np.sqrt(p_fed * (1 - p_fed) / 200 + p_cen * (1 - p_cen) / 200)
    assert abs(p_fed - p_cen) < 3 * se


def test_vfts_without_exploration_is_greedy_vfucb():
    ts = run_vfts(small_config(algorithm="VFTS", v=0.0))
    ucb = run_vfucb(small_config(beta=0.0))
    assert np.array_equal(ts.arms, ucb.arms)


def test_single_arm_always_plays_zero():
    result = run_centralized(small_config(algorithm="LinUCB", K=1))
    assert set(result.arms) == {0}
    assert np.all(result.regrets == 0)


def test_lints_is_reproducible():
    a = run_centralized(small_config(algorithm="LinTS"))
    b = run_centralized(small_config(algorithm="LinTS"))
    assert np.array_equal(a.cumulative_regret, b.cumulative_regret)


def test_partial_runs():
    full = run_partial(small_config(algorithm="PartialLinUCB", partial_ratio=1.0))
    cen = run_centralized(small_config(algorithm="LinUCB"))
    assert np.array_equal(full.arms, cen.arms)

    prefix = run_partial(small_config(algorithm="PartialLinUCB", partial_ratio=0.5))
    assert list(prefix.coordinates) == [0, 1, 2]
    random = run_partial(
        small_config(algorithm="PartialLinTS", partial_ratio=0.5, partial_mode="random")
    )
    assert len(random.coordinates) == 3
    assert len(random) == 40 and random.ledger.total_elements == 0


def test_truncated_run():
    cfg = small_config(env={"horizon": 10})
    result = run_simulation(cfg)
    assert result.truncated and len(result) == 10


def test_runner_dispatch():
    with pytest.raises(ValueError):
        run_vfucb(small_config(algorithm="LinUCB"))
    with pytest.raises(ValueError):
        run_simulation(small_config(algorithm="LinUCB"), mask_override=np.eye(6))
    result = run_simulation(small_config(algorithm="VFTS"))
    assert len(result) == 40 and result.mask.shape == (6, 6)


def test_run_result_frame():
    frame = run_vfucb(small_config(T=5)).to_frame()
    assert list(frame.columns) == [
        "t",
        "arm",
        "reward",
        "regret",
        "cumulative_regret",
        "theta_norm",
    ]
    assert list(frame["t"]) == [0, 1, 2, 3, 4]


def test_masked_policy_replays_like_the_raw_policy():
    log = make_planted_log(num_events=3000, num_arms=8, d_item=4, seed=1)
    generator = MaskGenerator(DimPartition.even(log.d, 2), Rng(0))
    masked = replay(MaskedPolicy(LinUCB(log.d, beta=0.6), generator), log)
    raw = replay(LinUCB(log.d, beta=0.6), log)
    assert (masked.credited, masked.clicks) == (raw.credited, raw.clicks)
    with pytest.raises(ValueError):
        MaskedPolicy(LinUCB(3), generator)
