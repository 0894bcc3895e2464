import pytest

from fedbandit.shared.numerics import Rng
from fedbandit.verification import (
    SUITES,
    SuiteResult,
    first_divergence,
    random_ledger_config,
    run_suites,
)


def test_all_suites_pass():
    results = run_suites(seeds=3, base_seed=11)
    assert [r.name for r in results] == list(SUITES)
    for r in results:
        assert r.passed, str(r)
        assert r.checked == 3


@pytest.mark.parametrize("suite", ["lossless_vfucb", "lossless_vfts"])
def test_injected_fault_is_caught(suite):
    (result,) = run_suites(seeds=2, suites=[suite], inject_fault=True)
    assert not result.passed
    assert result.round is not None
    assert "FAIL" in str(result) and f"round {result.round}" in str(result)


def test_fault_does_not_affect_other_suites():
    (result,) = run_suites(seeds=2, suites=["ledger"], inject_fault=True)
    assert result.passed


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(seeds=1, suites=["speed"])


def test_random_ledger_config_bounds():
    for seed in range(50):
        cfg = random_ledger_config(Rng(seed), seed)
        assert 1 <= cfg.T <= 50
        assert 1 <= cfg.K <= 8
        assert 1 <= len(cfg.partition) <= 5
        assert cfg.d <= 32
        assert sum(cfg.partition) == cfg.d
        assert min(cfg.partition) >= 1


class _Record:
    def __init__(self, t, arm):
        self.t = t
        self.arm = arm
        self.scores = None


class _Run:
    def __init__(self, arms):
        self.records = [_Record(t, a) for t, a in enumerate(arms)]


def test_first_divergence():
    assert first_divergence(_Run([0, 1, 2]), _Run([0, 1, 2])) is None
    assert first_divergence(_Run([0, 1, 2]), _Run([0, 2, 2]))[0] == 1
    assert first_divergence(_Run([0, 1]), _Run([0, 1, 2])) == (2, "run lengths differ")


def test_suite_result_str():
    assert str(SuiteResult("ledger", True, 4)) == "ledger: PASS (4 checked)"
    failed = SuiteResult("ledger", False, 0, "boom", seed=7)
    assert str(failed) == "ledger: FAIL boom (seed 7)"
