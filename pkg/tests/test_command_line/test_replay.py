import json
import os

from helpers import last_error_line, run_command_and_get_result
import numpy as np
import pandas as pd


def _write_raw_log(path, num_rows=600, seed=0):
    rng = np.random.RandomState(seed)
    groups = [[f"{g}{c:02d}" for c in range(26)] for g in "abcd"]
    with open(path, "w") as f:
        for _ in range(num_rows):
            group = rng.randint(len(groups))
            label = int(rng.rand() < 0.1 + 0.2 * group)
            numerics = [str(rng.randint(100)) for _ in range(13)]
            f.write("\t".join([str(label)] + numerics + groups[group]) + "\n")
        f.write("not a criteo line\n")


def _replay_spec(tmp_path, cache):
    spec = {
        "schema_version": 1,
        "kind": "replay",
        "repetitions": 2,
        "replay": {"cache": str(cache), "baseline_seeds": 2},
        "cells": [
            {"name": "linucb", "algorithm": "LinUCB"},
            {"name": "vfucb", "algorithm": "VFUCB", "num_participants": 2},
        ],
    }
    path = tmp_path / "replay.json"
    path.write_text(json.dumps(spec, indent=2))
    return path


def test_ingest_then_replay(tmp_path):
    raw = tmp_path / "raw.tsv"
    cache = tmp_path / "cache.csv"
    _write_raw_log(raw)
    result = run_command_and_get_result(
        f"fedbandit ingest --log {raw} --out {cache} --hash-buckets 1000 --top-labels 4 "
        f"--user-columns 0 1"
    )
    stderr = result.stderr.decode()
    print("stderr =>", stderr)
    assert result.returncode == 0
    assert "Rows read:" in stderr and "Rows malformed:" in stderr
    assert os.path.exists(cache)

    out = tmp_path / "out"
    spec = _replay_spec(tmp_path, cache)
    result = run_command_and_get_result(
        f"fedbandit run-replay --spec {spec} --out {out} --silent"
    )
    print("stderr =>", result.stderr.decode())
    assert result.returncode == 0
    ctr = pd.read_csv(out / "ctr.csv")
    assert list(ctr["cell"]) == ["linucb", "linucb", "vfucb", "vfucb"]
    assert (ctr["credited"] > 0).all()
    summary = json.load(open(out / "summary.json"))
    assert set(summary) == {"linucb", "vfucb"}


def test_replay_needs_a_replay_spec(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"schema_version": 1, "cells": [{"algorithm": "LinUCB"}]}))
    result = run_command_and_get_result(f"fedbandit run-replay --spec {spec}")
    assert result.returncode == 2
    assert last_error_line(result).startswith("error[SPEC_VALUE]")


def test_replay_without_spec():
    result = run_command_and_get_result("fedbandit run-replay")
    assert result.returncode == 2
    assert last_error_line(result).startswith("error[SPEC_MISSING]")


def test_ingest_missing_file(tmp_path):
    result = run_command_and_get_result(f"fedbandit ingest --log {tmp_path / 'none.tsv'} --out {tmp_path / 'c.csv'}")
    assert result.returncode == 1
    assert last_error_line(result).startswith("error[IO]")
