import numpy as np
import pytest

from fedbandit.environments import (
    EnvironmentExhausted,
    IngestConfig,
    IngestError,
    IngestStats,
    ReplayEvaluationError,
    ReplayLog,
    ReplayLogEntry,
    SyntheticEnv,
    build_context,
    build_context_block,
    cantor_pair,
    ingest_log,
    make_planted_log,
    pair_values,
    random_baseline,
    read_cache,
    read_criteo_rows,
    replay,
    replay_evaluate,
    top_label_set,
    write_cache,
)


class TestSyntheticEnv:
    def test_rounds_are_deterministic(self):
        a = SyntheticEnv(8, 4, seed=3).round(10)
        b = SyntheticEnv(8, 4, seed=3).round(10)
        assert np.array_equal(a.contexts, b.contexts)
        assert a.noise == b.noise
        assert not np.array_equal(a.contexts, SyntheticEnv(8, 4, seed=3).round(11).contexts)

    def test_unit_norm_contexts_and_parameter(self):
        env = SyntheticEnv(20, 6, seed=0)
        r = env.round(0)
        assert r.contexts.shape == (6, 20)
        assert np.allclose(np.linalg.norm(r.contexts, axis=1), 1.0)
        assert np.linalg.norm(env.theta_star) == pytest.approx(1.0)
        assert np.allclose(r.expected, r.contexts @ env.theta_star)

    def test_reward_and_regret(self):
        env = SyntheticEnv(5, 3, seed=1, noise_sigma2=0.0)
        r = env.round(2)
        best = int(np.argmax(r.expected))
        assert r.regret(best) == 0.0
        assert all(r.regret(a) >= 0 for a in range(3))
        assert r.reward(best) == pytest.approx(r.expected[best])

    def test_horizon(self):
        env = SyntheticEnv(3, 2, seed=0, horizon=2)
        env.round(1)
        with pytest.raises(EnvironmentExhausted):
            env.round(2)

    def test_validation(self):
        with pytest.raises(ValueError):
            SyntheticEnv(0, 2, seed=0)
        with pytest.raises(ValueError):
            SyntheticEnv(3, 2, seed=0, theta_star=np.zeros(3))


def test_build_context():
    assert np.array_equal(build_context([1.0, 2.0], [10.0, 20.0]), [11.0, 21.0, 12.0, 22.0])
    block = build_context_block(np.array([[1.0, 2.0]]), np.array([[10.0, 20.0], [0.0, 0.0]]))
    assert block.shape == (1, 2, 4)
    assert np.array_equal(block[0, 0], [11.0, 21.0, 12.0, 22.0])
    assert np.array_equal(block[0, 1], [1.0, 1.0, 2.0, 2.0])


def test_replay_log_from_entries():
    entries = [
        ReplayLogEntry(np.array([0.5]), np.array([0.1, 0.2]), 7, 1),
        ReplayLogEntry(np.array([0.25]), np.array([0.3, 0.4]), 3, 0),
        ReplayLogEntry(np.array([0.75]), np.array([0.1, 0.2]), 7, 0),
    ]
    log = ReplayLog.from_entries(entries)
    assert list(log.labels) == [3, 7]
    assert list(log.arms) == [1, 0, 1]
    assert log.d == 2 and log.num_arms == 2 and len(log) == 3
    assert log[1].item_label == 3
    assert np.allclose(log.contexts(0, 1)[0, 1], [0.6, 0.7])


def test_planted_log():
    log = make_planted_log(num_events=2000, seed=1)
    assert log.num_arms == 40 and log.d_user == 1 and log.d_item == 10 and log.d == 10
    assert set(np.unique(log.rewards)) <= {0, 1}
    probs = log.contexts(0, len(log))[np.arange(len(log)), log.arms] @ log.planted_theta
    assert probs.min() >= 0.0 and probs.max() <= 1.0
    assert np.array_equal(make_planted_log(num_events=2000, seed=1).rewards, log.rewards)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_planted_rewards_follow_click_probabilities(seed):
    log = make_planted_log(num_events=40_000, num_arms=10, d_item=4, seed=seed)
    probs = log.contexts(0, len(log))[np.arange(len(log)), log.arms] @ log.planted_theta
    assert set(np.unique(log.rewards)) == {0, 1}
    assert abs(log.rewards.mean() - probs.mean()) < 0.01



def test_cache_round_trip(tmp_path):
    log = make_planted_log(num_events=300, num_arms=5, d_item=3, seed=2)
    path = str(tmp_path / "replay.csv")
    write_cache(log, path)
    with open(path) as f:
        assert f.readline().startswith("# fedbandit-replay-cache v1 d_u=1 d_i=3")
    back = read_cache(path)
    assert np.array_equal(back.labels, log.labels)
    assert np.array_equal(back.arms, log.arms)
    assert np.array_equal(back.rewards, log.rewards)
    assert np.array_equal(back.users, log.users)
    assert np.array_equal(back.items, log.items)


def test_cache_rejects_other_versions(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# fedbandit-replay-cache v9 d_u=1 d_i=1\nu0,i0,label,reward\n")
    with pytest.raises(ValueError):
        read_cache(str(path))
    path.write_text("u0,i0,label,reward\n")
    with pytest.raises(ValueError):
        read_cache(str(path))


def _row(label, numerics, categoricals):
    return [str(label)] + [str(v) for v in numerics] + list(categoricals)


def _rows():
    cats_a = [f"a{i}" for i in range(26)]
    cats_b = [f"b{i}" for i in range(26)]
    cats_c = [f"c{i}" for i in range(26)]
    rows = []
    for n in range(6):
        rows.append(_row(n % 2, [n] * 13, cats_a))
    for n in range(3):
        rows.append(_row(1, [10 + n] * 13, cats_b))
    rows.append(_row(0, [""] * 13, cats_c))
    return rows


class TestIngest:
    def test_pairing(self):
        assert [cantor_pair(0, 0), cantor_pair(1, 0), cantor_pair(0, 1)] == [0, 1, 2]
        assert cantor_pair(2, 3) == 18
        assert pair_values([1, 2, 3]) == 69
        assert pair_values([5]) == 5

    def test_config(self):
        assert IngestConfig().groups == [(0, 9), (9, 18), (18, 26)]
        assert IngestConfig(n_hash_values=3, hash_buckets=1 << 15)
        with pytest.raises(ValueError):
            IngestConfig(n_hash_values=4, hash_buckets=1 << 15)
        with pytest.raises(ValueError):
            IngestConfig(hash_buckets=1)
        with pytest.raises(ValueError):
            IngestConfig(user_columns=(13,))
        with pytest.raises(ValueError):
            IngestConfig(user_columns=(0, 1), user_scaling_factors=(1.0,))

    def test_top_labels_break_ties_toward_smaller_label(self):
        assert top_label_set({5: 3, 2: 3, 9: 1}, 1) == {2}
        assert top_label_set({5: 3, 2: 1, 9: 4}, 2) == {5, 9}

    def test_ingest(self):
        stats = IngestStats()
        rows = _rows() + [["1", "2"], _row(2, [0] * 13, ["x"] * 26), _row(1, ["abc"] * 13, ["x"] * 26)]
        log = ingest_log(rows, IngestConfig(top_labels=2, user_columns=(0, 1), hash_buckets=1000), stats)
        assert stats.rows_read == 13
        assert stats.rows_malformed == 3
        assert stats.distinct_labels == 3
        assert stats.rows_kept == 9
        assert log.num_arms == 2 and len(log) == 9
        assert log.d_user == 2 and log.d_item == 3
        assert log.users.min() == 0.0 and log.users.max() == 1.0
        assert np.allclose(log.users[:, 0], [0, 1, 2, 3, 4, 5, 10, 11, 12] / np.float64(12))
        assert np.all((log.items >= 0) & (log.items <= 1))
        assert list(log.rewards) == [0, 1, 0, 1, 0, 1, 1, 1, 1]

    def test_keeps_the_most_frequent_of_many_labels(self):
        from collections import Counter

        from fedbandit.environments.ingest import hash_categoricals

        rows = []
        for s in range(60):
            cats = [f"s{s}c{j}" for j in range(26)]
            for n in range(s + 1):
                rows.append(_row(n % 2, [n] * 13, cats))
        cfg = IngestConfig(hash_buckets=1000, top_labels=40)
        counts = Counter(pair_values(hash_categoricals(r[14:], cfg)) for r in rows)
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:40]
        expected = sorted(label for label, _ in ranked)

        stats = IngestStats()
        log = ingest_log(rows, cfg, stats)
        assert log.num_arms == 40
        assert list(log.labels) == expected
        assert len(log) == stats.rows_kept == sum(count for _, count in ranked)

        order = np.random.RandomState(3).permutation(len(rows))
        shuffled = ingest_log([rows[i] for i in order], cfg)
        assert np.array_equal(shuffled.labels, log.labels)
        assert np.array_equal(shuffled.items, log.items)
        assert len(shuffled) == len(log)
        assert np.array_equal(np.bincount(shuffled.arms, minlength=40), np.bincount(log.arms, minlength=40))
        assert shuffled.rewards.sum() == log.rewards.sum()


    def test_hashing_is_seeded(self):
        a = ingest_log(_rows(), IngestConfig(hash_seed=0, top_labels=3))
        b = ingest_log(_rows(), IngestConfig(hash_seed=0, top_labels=3))
        assert np.array_equal(a.labels, b.labels)
        assert np.array_equal(a.items, b.items)

    def test_missing_values_take_the_minimum(self):
        log = ingest_log(_rows(), IngestConfig(top_labels=3, user_columns=(0,), hash_buckets=1000))
        assert log.users[-1, 0] == 0.0

    def test_nothing_to_ingest(self):
        with pytest.raises(IngestError):
            ingest_log([["1", "2"]])

    def test_read_criteo_rows(self, tmp_path):
        path = tmp_path / "log.txt"
        path.write_text("\n".join("\t".join(r) for r in _rows()) + "\n\n")
        rows = list(read_criteo_rows(str(path)))
        assert len(rows) == 10 and all(len(r) == 40 for r in rows)


class AlwaysFirst:
    """Plays arm 0 and counts its updates."""

    def __init__(self):
        self.updates = 0

    def choose_block(self, contexts):
        return np.zeros(len(contexts), dtype=np.int64)

    def update(self, x, r):
        self.updates += 1


def _small_log():
    users = np.array([[0.1], [0.2], [0.3], [0.4], [0.5], [0.6]])
    items = np.array([[0.0], [1.0]])
    return ReplayLog(users, [0, 1, 0, 0, 1, 0], [1, 1, 0, 1, 0, 0], [10, 20], items)


class TestReplay:
    def test_only_matching_events_count(self):
        policy = AlwaysFirst()
        result = replay(policy, _small_log(), block_size=4)
        assert result.credited == 4 and result.clicks == 2 and result.events == 6
        assert result.ctr == 0.5
        assert policy.updates == 4
        assert result.match_rate == pytest.approx(4 / 6)

    def test_block_size_does_not_change_the_result(self):
        from fedbandit.bandits import LinUCB

        log = make_planted_log(num_events=3000, num_arms=10, d_item=4, seed=5)
        a = replay(LinUCB(log.d, beta=0.6), log, block_size=1)
        b = replay(LinUCB(log.d, beta=0.6), log, block_size=64)
        assert (a.credited, a.clicks) == (b.credited, b.clicks)

    def test_trace_checkpoints(self):
        result = replay(AlwaysFirst(), _small_log(), checkpoints=3)
        assert [c[0] for c in result.trace] == [2, 4, 6]
        assert result.trace[-1][1] == result.credited

    def test_errors(self):
        class Never(AlwaysFirst):
            def choose_block(self, contexts):
                return np.full(len(contexts), 5)

        with pytest.raises(ReplayEvaluationError):
            replay(Never(), _small_log())
        empty = ReplayLog(np.zeros((0, 1)), [], [], [1], [[0.0]])
        with pytest.raises(ReplayEvaluationError):
            replay(AlwaysFirst(), empty)

    def test_relative_ctr(self):
        log = _small_log()
        evaluation = replay_evaluate(AlwaysFirst(), log, baseline=[0.25, 0.75])
        assert evaluation.random_ctr == 0.5
        assert evaluation.relative_ctr == 1.0
        with pytest.raises(ReplayEvaluationError):
            replay_evaluate(AlwaysFirst(), log, baseline=[0.0])

    def test_random_baseline_is_seeded(self):
        log = make_planted_log(num_events=2000, num_arms=5, d_item=2, seed=0)
        a = random_baseline(log, seed=3, num_seeds=2)
        assert a == random_baseline(log, seed=3, num_seeds=2)
        assert len(a) == 2 and all(0 <= c <= 1 for c in a)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_policy_matches_one_event_in_k(self, seed):
        from fedbandit.bandits import RandomPolicy
        from fedbandit.shared.numerics import Rng

        log = make_planted_log(num_events=40_000, num_arms=40, seed=seed)
        result = replay(RandomPolicy(Rng(seed + 100)), log)
        assert result.match_rate == pytest.approx(1 / 40, abs=0.005)
        assert 0.0 < result.ctr < 1.0
