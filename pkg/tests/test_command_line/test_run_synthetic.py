import json
import os

from helpers import last_error_line, run_command_and_get_result
import pandas as pd
import pytest

SPEC = {
    "schema_version": 1,
    "kind": "synthetic",
    "repetitions": 2,
    "defaults": {"T": 30, "K": 4, "d": 6, "partition": [2, 2, 2]},
    "cells": [
        {"name": "vfucb", "algorithm": "VFUCB"},
        {"name": "linucb", "algorithm": "LinUCB"},
    ],
}


def _write_spec(tmp_path, spec):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec, indent=2))
    return path


def test_run_synthetic_from_spec(tmp_path):
    spec = _write_spec(tmp_path, SPEC)
    out = tmp_path / "out"
    result = run_command_and_get_result(
        f"fedbandit run-synthetic --spec {spec} --out {out} --silent --dump-masks {tmp_path / 'masks'}"
    )
    print("stderr =>", result.stderr.decode())
    assert result.returncode == 0
    traces = pd.read_csv(out / "traces.csv")
    assert set(traces["cell"]) == {"vfucb", "linucb"}
    summary = json.load(open(out / "summary.json"))
    assert summary["vfucb"]["max_theta_norm_diff"] <= 1e-8
    assert sorted(os.listdir(tmp_path / "masks" / "vfucb")) == [
        "shard_0.fbmx",
        "shard_1.fbmx",
        "shard_2.fbmx",
    ]


def test_run_synthetic_from_flags(tmp_path):
    result = run_command_and_get_result(
        f"fedbandit run-synthetic --algorithm VFTS --T 20 --K 3 --d 4 --num-participants 2 "
        f"--coupled-ts --seeds 1 --silent --out {tmp_path}"
    )
    assert result.returncode == 0
    aggregate = pd.read_csv(tmp_path / "aggregate.csv")
    assert set(aggregate["cell"]) == {"VFTS"}
    assert len(aggregate[aggregate["metric"] == "regret"]) == 20


def test_seeds_override_changes_repetitions(tmp_path):
    spec = _write_spec(tmp_path, SPEC)
    result = run_command_and_get_result(
        f"fedbandit run-synthetic --spec {spec} --seeds 1 --silent --out {tmp_path / 'out'}"
    )
    assert result.returncode == 0
    traces = pd.read_csv(tmp_path / "out" / "traces.csv")
    assert set(traces["seed"]) == {0}


@pytest.mark.parametrize(
    "mutate, code, line",
    [
        (lambda s: s["cells"][1].update(gamma=2), "SPEC_UNKNOWN_KEY", 23),
        (lambda s: s["cells"][0].update(algorithm="UCB"), "SPEC_VALUE", 16),
        (lambda s: s.update(schema_version=3), "SPEC_VERSION", 2),
    ],
)
def test_invalid_spec_is_a_usage_error(tmp_path, mutate, code, line):
    spec = json.loads(json.dumps(SPEC))
    mutate(spec)
    path = _write_spec(tmp_path, spec)
    result = run_command_and_get_result(f"fedbandit run-synthetic --spec {path} --out {tmp_path}")
    assert result.returncode == 2
    stderr = result.stderr.decode().strip()
    assert len(stderr.splitlines()) == 1
    assert stderr.startswith(f"error[{code}] line {line}:")


def test_missing_spec_file(tmp_path):
    result = run_command_and_get_result(f"fedbandit run-synthetic --spec {tmp_path / 'none.json'}")
    assert result.returncode == 2
    assert last_error_line(result).startswith("error[SPEC_IO]")


def test_usage_error():
    result = run_command_and_get_result("fedbandit run-synthetic --T")
    assert result.returncode == 2
    assert last_error_line(result).startswith("error[USAGE]")
    result = run_command_and_get_result("fedbandit run-synthetic --algorithm UCB")
    assert result.returncode == 2
    assert last_error_line(result).startswith("error[USAGE]")


def test_missing_command_is_a_usage_error():
    result = run_command_and_get_result("fedbandit")
    assert result.returncode == 2
    assert last_error_line(result) == "error[USAGE] no command given"
    assert b"usage:" in result.stderr
    assert result.stdout == b""
