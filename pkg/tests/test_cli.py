import pandas as pd
import pytest
import yaml

from metrics_io.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

TABLES = ["rounds.csv", "events.csv", "alive.csv", "metrics.csv", "decision_graph.csv", "residual_curve.csv"]


@pytest.fixture
def small_yaml(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text(yaml.safe_dump({
        "n_nodes":        30,
        "initial_energy": 0.05,
        "forced_k":       2,
        "ev_checkpoints": [10, 20],
    }))
    return str(path)


def test_validate_config_defaults(capsys):
    assert main(["validate-config"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "configuration OK" in out
    assert "beta: 0.2" in out


def test_validate_config_applies_flags(capsys, small_yaml):
    assert main(["validate-config", "-c", small_yaml, "--beta", "0.5", "--seeds-are-not-a-flag"]) == EXIT_USAGE
    assert main(["validate-config", "-c", small_yaml, "--beta", "0.5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "beta: 0.5" in out and "n_nodes: 30" in out


def test_invalid_value_is_a_usage_error(capsys):
    assert main(["validate-config", "--beta", "-1"]) == EXIT_USAGE
    assert "beta" in capsys.readouterr().err


def test_unknown_config_key_is_a_usage_error(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("betta: 0.3\n")
    assert main(["validate-config", "-c", str(path)]) == EXIT_USAGE


def test_missing_config_file_is_a_failure(tmp_path):
    assert main(["validate-config", "-c", str(tmp_path / "missing.yaml")]) == EXIT_FAILURE


def test_unknown_protocol_is_a_usage_error(tmp_path, small_yaml):
    argv = ["simulate", "-c", small_yaml, "--protocol", "vleach", "--out-dir", str(tmp_path / "o")]
    assert main(argv) == EXIT_USAGE


def test_simulate_twice_gives_identical_tables(tmp_path, small_yaml):
    for name in ("a", "b"):
        argv = ["simulate", "-c", small_yaml, "--seed", "1", "--max-rounds", "40", "--out-dir", str(tmp_path / name)]
        assert main(argv) == EXIT_OK
    for table in TABLES:
        assert (tmp_path / "a" / table).read_bytes() == (tmp_path / "b" / table).read_bytes(), table
    assert (tmp_path / "a" / "config_resolved.yaml").exists()
    assert (tmp_path / "a" / "run_metadata.json").exists()


@pytest.mark.parametrize("protocol", ["iskmeans", "leach"])
def test_rounds_table_is_byte_identical_over_three_runs(tmp_path, small_yaml, protocol):
    blobs = []
    for i in range(3):
        out = tmp_path / f"run{i}"
        argv = ["simulate", "-c", small_yaml, "--protocol", protocol, "--seed", "9",
                "--max-rounds", "60", "--out-dir", str(out)]
        assert main(argv) == EXIT_OK
        blobs.append((out / "rounds.csv").read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]


def test_deploy_then_cluster_with_forced_k(tmp_path):
    layout = tmp_path / "layout.csv"
    assert main(["deploy", "--seed", "3", "--out", str(layout)]) == EXIT_OK
    assert len(pd.read_csv(layout)) == 100

    out = tmp_path / "clu"
    assert main(["cluster", "--layout", str(layout), "--k", "4", "--out-dir", str(out)]) == EXIT_OK
    table = pd.read_csv(out / "assignment.csv")
    assert table["cluster"].nunique() == 4
    assert set(table["role"]) <= {"Member", "ClusterHead", "CandidateCH"}
    assert (table["role"] == "ClusterHead").sum() == 4


def test_simulate_on_a_layout_file(tmp_path, small_yaml):
    layout = tmp_path / "layout.csv"
    layout.write_text("node_id,x_m,y_m\n0,10,10\n1,12,11\n2,80,80\n3,82,79\n")
    out = tmp_path / "sim"
    argv = ["simulate", "-c", small_yaml, "--layout", str(layout), "--max-rounds", "5", "--out-dir", str(out)]
    assert main(argv) == EXIT_OK
    assert pd.read_csv(out / "rounds.csv")["node_id"].max() == 3


def test_bad_layout_file_is_a_usage_error(tmp_path):
    layout = tmp_path / "layout.csv"
    layout.write_text("node_id,x_m,y_m\n0,1,1\n5,2,2\n")
    assert main(["cluster", "--layout", str(layout), "--out-dir", str(tmp_path / "o")]) == EXIT_USAGE


def test_batch_writes_runs_and_summary(tmp_path, small_yaml):
    out = tmp_path / "batch"
    argv = ["batch", "-c", small_yaml, "--protocols", "iskmeans,hardkmeans", "--seeds", "1-2",
            "--max-rounds", "50", "--out-dir", str(out)]
    assert main(argv) == EXIT_OK
    runs = pd.read_csv(out / "runs.csv")
    summary = pd.read_csv(out / "summary.csv")
    assert len(runs) == 4 and (runs["status"] == "ok").all()
    assert summary["protocol"].tolist() == ["iskmeans", "hardkmeans"]
    assert {"fnd_mean", "fnd_std", "ev_10_mean"} <= set(summary.columns)


def test_beta_sweep_command(tmp_path):
    out = tmp_path / "sweep"
    assert main(["beta-sweep", "--k", "2", "--betas", "0.05,0.2", "--out-dir", str(out)]) == EXIT_OK
    table = pd.read_csv(out / "beta_sweep.csv")
    assert list(table.columns) == ["beta", "node_id", "cluster", "p_first", "other", "p_second", "gap", "boundary"]
