import json

import pytest

from khovlab import cache as cache_mod
from khovlab.cli import main
from khovlab.serialize import SCHEMA_VERSION


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(cache_mod.ENV_VAR, raising=False)


def test_pkn_table(capsys):
    code, out, _ = run(capsys, "pkn", "--n", "4", "--k", "2")
    assert code == 0
    assert out.strip() == "9"


def test_pkn_json(capsys):
    code, doc = run_json(capsys, "pkn", "--n", "5", "--k", "3")
    assert code == 0
    assert doc == {"schema_version": SCHEMA_VERSION, "command": "pkn", "n": 5, "k": 3, "p": 30}


def test_mn_lists_values_and_vectors(capsys):
    code, doc = run_json(capsys, "mn", "--n", "6")
    assert code == 0
    assert doc["primes"] == [2, 3, 5]
    vectors = [e["vector"] for e in doc["elements"]]
    assert vectors == sorted(vectors)
    assert sorted(e["value"] for e in doc["elements"]) == [1, 2, 3, 4, 5, 6]


def test_sequence_with_differences(capsys):
    code, doc = run_json(capsys, "sequence", "--n", "5", "--kmax", "6")
    assert doc["values"] == [1, 5, 14, 30, 55, 91, 140]
    assert doc["differences"]["2"][:2] == [5, 7]
    assert set(doc["differences"]["4"]) == {0}


def test_fit(capsys):
    code, doc = run_json(capsys, "fit", "--n", "4", "--kmax", "10")
    assert code == 0
    fit = doc["fit"]
    assert fit["threshold"] == 0
    assert fit["polynomial"]["coefficients"] == [{"num": "1", "den": "1"}, {"num": "2", "den": "1"}, {"num": "1", "den": "1"}]
    assert fit["polynomial"]["binomial_coefficients"] == [{"num": "1", "den": "1"}, {"num": "3", "den": "1"}, {"num": "2", "den": "1"}]
    code, out, _ = run(capsys, "fit", "--n", "4", "--kmax", "10")
    assert "t^2 + 2t + 1" in out and "C(t,2)" in out


def test_fit_insufficient_data_is_exit_3(capsys):
    code, out, err = run(capsys, "fit", "--n", "10", "--kmax", "4")
    assert code == 3
    assert "kmax" in err


def test_ehrhart(capsys):
    code, out, _ = run(capsys, "ehrhart", "--n", "3")
    assert "(1/2)t^2 + (3/2)t + 1" in out
    assert "volume = 1/2" in out
    code, doc = run_json(capsys, "ehrhart", "--n", "3")
    assert doc["volume"] == {"num": "1", "den": "2"}
    assert doc["counts"] == [1, 3, 6]


def test_sandwich(capsys):
    code, doc = run_json(capsys, "sandwich", "--n", "4", "--kmax", "3")
    assert code == 0 and doc["ok"]
    assert doc["rows"][-1] == {"k": 3, "p_k": 16, "lattice_count": 16, "p_k_plus_d": 36, "ok": True}


def test_closedness_halfspace(capsys):
    code, doc = run_json(capsys, "closedness", "--halfspace", "6,10,15:30", "--kmax", "2")
    assert code == 0
    k1, k2 = doc["rows"]
    assert k1["closed"] and not k2["closed"]
    assert [4, 2, 1] in k2["witnesses"]
    code, out, _ = run(capsys, "closedness", "--halfspace", "6,10,15:30", "--kmax", "2")
    assert "(4, 2, 1)" in out


def test_closedness_n_default_kmax(capsys):
    code, doc = run_json(capsys, "closedness", "--n", "10")
    assert code == 0
    assert [r["k"] for r in doc["rows"]] == [1, 2, 3]
    assert doc["closed_for_all_tested_k"]


def test_closedness_non_lattice_simplex_is_exit_3(capsys):
    code, _, err = run(capsys, "closedness", "--halfspace", "4,10:30", "--kmax", "1")
    assert code == 3


def test_threshold_json(capsys):
    code, doc = run_json(capsys, "threshold", "--n", "4", "--kmax", "12")
    assert code == 0
    assert doc["gsw_exact"] == {"num": "29", "den": "1"}
    assert doc["threshold_ceiling"] == 38
    assert doc["empirical"]["threshold"] == 0
    iv = doc["log_simplex_threshold"]
    assert set(iv) == {"lo", "hi", "bits"} and iv["bits"] == 64
    assert all(doc["verdicts"].values())


@pytest.mark.parametrize("argv", [
    ["pkn", "--n", "4"],
    ["pkn", "--n", "x", "--k", "1"],
    ["pkn", "--n", "0", "--k", "1"],
    ["closedness", "--n", "4", "--halfspace", "1:1"],
    ["closedness", "--halfspace", "6,a:30"],
    ["nosuch"],
    ["verify", "--nmax", "3", "--level", "slow"],
])
def test_bad_usage_is_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_guard_is_exit_3(capsys, monkeypatch):
    from khovlab import sumset

    monkeypatch.setattr(sumset, "MAX_SUMSET", 100)
    monkeypatch.setattr(sumset._packed_iteration, "__defaults__", (100,))
    code, _, err = run(capsys, "pkn", "--n", "10", "--k", "6")
    assert code == 3
    assert "limit" in err


def test_verify_small(capsys):
    code, doc = run_json(capsys, "verify", "--nmax", "5")
    assert code == 0
    assert doc["passed"]
    assert [c["id"] for c in doc["criteria"]] == list(range(1, 10))


def test_verify_failure_is_exit_1(capsys, monkeypatch):
    from khovlab import verify

    monkeypatch.setattr(verify, "BG_GAP", (0, 0, 0))
    code, doc = run_json(capsys, "verify", "--nmax", "3")
    assert code == 1
    assert not doc["passed"]
    assert [c["passed"] for c in doc["criteria"]][5] is False


def test_identical_invocations_are_byte_identical(capsys):
    argv = ["closedness", "--n", "12", "--kmax", "3", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_cache_round_trip(tmp_path, capsys, monkeypatch):
    argv = ["threshold", "--n", "6", "--cache", str(tmp_path), "--format", "json"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    record = json.loads((tmp_path / "n6.json").read_text())
    assert record["schema_version"] == SCHEMA_VERSION
    assert record["sequence"][:4] == [1, 6, 18, 40]
    assert record["ehrhart_counts"] == [1, 6, 18, 40]
    assert "threshold_report" in record

    def boom(*a, **k):
        raise AssertionError("recomputed a cached result")

    monkeypatch.setattr(cache_mod, "growth_sequence", boom)
    monkeypatch.setattr(cache_mod, "ehrhart", boom)
    code, second, _ = run(capsys, *argv)
    assert code == 0
    assert second == first
    code, out, _ = run(capsys, "pkn", "--n", "6", "--k", "3", "--cache", str(tmp_path))
    assert out.strip() == "40"


def test_cache_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cache_mod.ENV_VAR, str(tmp_path))
    run(capsys, "pkn", "--n", "5", "--k", "4")
    assert json.loads((tmp_path / "n5.json").read_text())["sequence"] == [1, 5, 14, 30, 55]


def test_stale_cache_is_ignored(tmp_path, capsys):
    (tmp_path / "n5.json").write_text(json.dumps({"schema_version": -1, "n": 5, "sequence": [9, 9, 9]}))
    code, out, _ = run(capsys, "pkn", "--n", "5", "--k", "2", "--cache", str(tmp_path))
    assert out.strip() == "14"
    assert json.loads((tmp_path / "n5.json").read_text())["schema_version"] == SCHEMA_VERSION


def test_corrupt_cache_is_ignored(tmp_path, capsys):
    (tmp_path / "n4.json").write_text("{not json")
    code, out, _ = run(capsys, "pkn", "--n", "4", "--k", "2", "--cache", str(tmp_path))
    assert code == 0 and out.strip() == "9"


def test_cache_keeps_longest_sequence(tmp_path):
    c = cache_mod.ResultCache(tmp_path)
    cache_mod.mn_sequence(7, 6, c)
    cache_mod.mn_sequence(7, 3, c)
    assert len(c.load(7)["sequence"]) == 7
    assert not list(tmp_path.glob(".*.tmp"))
