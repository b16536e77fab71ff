"""CLI behaviour: exit codes, output formats, and the in-process service bridge."""

import json

import pytest
from click.testing import CliRunner

from nilforms.cli import main
from nilforms.forms import tuple_to_json_dict

from helpers import heisenberg, std_tuple


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def heisenberg_file(tmp_path):
    path = tmp_path / "heisenberg.json"
    path.write_text(json.dumps(tuple_to_json_dict(heisenberg())))
    return str(path)


@pytest.fixture()
def degenerate_file(tmp_path):
    # single psi12 on Q^4: actual center dim 3 vs generic prediction 1
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(tuple_to_json_dict(std_tuple(4, (0, 1)))))
    return str(path)


def test_center_table_output(runner):
    result = runner.invoke(main, ["center", "--n", "3", "--t", "1", "--trials", "3"])
    assert result.exit_code == 0
    assert "verdict: ok" in result.output
    assert "result:  match_count = 3" in result.output
    assert "predict: center_dim = 2" in result.output


def test_center_reads_dimensions_from_input_file(runner, heisenberg_file):
    result = runner.invoke(main, ["center", "--input", heisenberg_file])
    assert result.exit_code == 0
    assert "result:  match_count = 1" in result.output


def test_center_flags_exit_with_code_one(runner, degenerate_file):
    result = runner.invoke(main, ["center", "--input", degenerate_file])
    assert result.exit_code == 1
    assert "verdict: flagged" in result.output
    assert "flag:" in result.output


def test_missing_dimensions_exit_with_code_two(runner):
    result = runner.invoke(main, ["center", "--trials", "2"])
    assert result.exit_code == 2


def test_bad_config_exits_with_code_two(runner):
    result = runner.invoke(main, ["center", "--n", "3", "--t", "9", "--trials", "1"])
    assert result.exit_code == 2


def test_ms_requires_quotient_dimensions(runner):
    result = runner.invoke(main, ["ms", "--n", "3", "--t", "3"])
    assert result.exit_code == 2


def test_ms_rejects_unknown_strategy(runner):
    result = runner.invoke(
        main,
        ["ms", "--n", "3", "--t", "3", "--n0", "2", "--t0", "1", "--strategy", "guess"],
    )
    assert result.exit_code == 2


def test_ms_guaranteed_regime_run(runner):
    result = runner.invoke(
        main,
        [
            "ms",
            "--n", "3",
            "--t", "3",
            "--n0", "2",
            "--t0", "1",
            "--trials", "2",
            "--strategy", "randomized-q",
        ],
    )
    assert result.exit_code == 0
    assert "result:  found_ratio = 2/2" in result.output
    assert "verdict: ok" in result.output


def test_abelian_run_with_oracle(runner):
    result = runner.invoke(
        main,
        ["abelian", "--n", "4", "--t", "3", "--trials", "2", "--prime", "5"],
    )
    assert result.exit_code == 0
    assert "predict: bound_k = 2" in result.output
    assert "result:  oracle_ran_count = 2" in result.output


def test_thresholds_table(runner):
    result = runner.invoke(main, ["thresholds", "--n", "4"])
    assert result.exit_code == 0
    lines = [line.split() for line in result.output.splitlines()]
    assert ["n", "n0", "t0", "absence_below", "guaranteed_at_or_above", "corollary_bound"] in lines
    assert ["4", "2", "1", "2", "6", "2"] in lines
    assert "verdict: ok" in result.output


def test_thresholds_csv(runner):
    result = runner.invoke(main, ["thresholds", "--n", "3", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0].strip() == "n,n0,t0,absence_below,guaranteed_at_or_above,corollary_bound"
    assert any(line.startswith("3,2,1,") for line in lines)


def test_json_output_is_deterministic(runner):
    args = ["center", "--n", "4", "--t", "2", "--trials", "2", "--seed", "7", "--format", "json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    report = json.loads(first.output)
    assert report["verdict"] == "ok"
    assert first.output == second.output
    assert first.output.strip() == json.dumps(report, indent=2, sort_keys=True)


def test_csv_output_for_experiments(runner):
    result = runner.invoke(
        main, ["center", "--n", "3", "--t", "1", "--trials", "2", "--format", "csv"]
    )
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0].strip() == "metric,value"
    assert any(line.startswith("verdict,ok") for line in lines)


def test_plucker_round_trip_via_file(runner, tmp_path):
    path = tmp_path / "plane.json"
    path.write_text(json.dumps({"ambient": 4, "basis": [[1, 0, 1, 0], [0, 1, 0, 1]]}))
    result = runner.invoke(main, ["plucker", "--input", str(path)])
    assert result.exit_code == 0
    assert "p[1,2] = 1" in result.output
    assert "p[2,3] = -1" in result.output
    assert "round_trip: True" in result.output


def test_plucker_requires_existing_file(runner, tmp_path):
    result = runner.invoke(main, ["plucker", "--input", str(tmp_path / "missing.json")])
    assert result.exit_code == 2


def test_plucker_rejects_malformed_input(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([1, 2, 3]))
    result = runner.invoke(main, ["plucker", "--input", str(path)])
    assert result.exit_code == 2


def test_group_check_run(runner, heisenberg_file):
    result = runner.invoke(main, ["group-check", "--trials", "5", "--input", heisenberg_file])
    assert result.exit_code == 0
    assert "result:  associative_count = 5" in result.output
    assert "verdict: ok" in result.output


def test_quaternion_example_run(runner):
    result = runner.invoke(main, ["example-quaternion", "--trials", "10", "--restarts", "5"])
    assert result.exit_code == 0
    assert "result:  q_max_dim_seen = 1" in result.output
    assert "result:  f5_plane_found = True" in result.output
