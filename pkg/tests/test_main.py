import json

import pytest
from click.testing import CliRunner

from dcs import gadgets, settings
from dcs.__main__ import cli


@pytest.fixture
def configure_logging(mocker):
    return mocker.patch("dcs.__main__.configure_logging")


@pytest.fixture
def runner(configure_logging):
    return CliRunner(mix_stderr=False)


@pytest.fixture
def threshold_file(write_instance, threshold):
    return write_instance(threshold)


def test_log_level_is_passed_on(runner, threshold_file, configure_logging):
    runner.invoke(cli, ["--log-level", "DEBUG", "verify", "--instance", threshold_file])

    configure_logging.assert_called_once_with("DEBUG")


@pytest.mark.parametrize("members,exit_code,output", [("0,1", 0, "true"), ("0", 1, "false")])
def test_verify(runner, threshold_file, members, exit_code, output):
    result = runner.invoke(cli, ["verify", "--instance", threshold_file, "--set", members])

    assert result.exit_code == exit_code
    assert result.stdout.strip() == output


def test_verify_per_player(runner, threshold_file):
    result = runner.invoke(cli, ["verify", "--instance", threshold_file, "--set", "0", "--per-player", "0"])

    assert result.exit_code == 0


def test_verify_minimal(runner, threshold_file):
    result = runner.invoke(
        cli, ["verify", "--instance", threshold_file, "--set", "0,1,2", "--minimal", "fast"]
    )

    assert result.exit_code == 1


def test_verify_order_independent(runner, write_instance, path3):
    path = write_instance(gadgets.gadget_dominating_oi(path3, 1))
    result = runner.invoke(cli, ["verify", "--instance", path, "--order-independent"])

    assert result.exit_code == 1
    assert result.stdout.strip() == "false"


def test_solve(runner, threshold_file):
    result = runner.invoke(cli, ["solve", "--instance", threshold_file, "--method", "brute"])

    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["solution"] == [0, 1]
    assert report["weight"] == 2
    assert report["feasible"] is True


def test_solve_falls_back_to_brute_force(runner, write_instance, shift_congestion):
    path = write_instance(shift_congestion)

    result = runner.invoke(cli, ["solve", "--instance", path, "--method", "singleton"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["method"] == "brute"

    result = runner.invoke(
        cli, ["solve", "--instance", path, "--method", "singleton", "--no-fallback-brute"]
    )
    assert result.exit_code == 2
    assert result.stderr.startswith("Error: ")


def test_solve_budget_exceeded(runner, threshold_file, monkeypatch):
    monkeypatch.setattr(settings, "BRUTE_FORCE_MAX_PLAYERS", 2)

    result = runner.invoke(cli, ["solve", "--instance", threshold_file])

    assert result.exit_code == 3
    assert "over the configured cap" in result.stderr


def test_bad_instance(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"format": "1.0.0", "kind": "gadget"}')

    result = runner.invoke(cli, ["solve", "--instance", str(path)])

    assert result.exit_code == 2
    assert "$.game" in result.stderr


def test_gadget(runner, tmp_path):
    output = tmp_path / "t.json"
    result = runner.invoke(cli, ["gadget", "--name", "threshold", "--n", "4", "--p", "2", "-o", str(output)])

    assert result.exit_code == 0
    assert json.loads(output.read_text())["game"]["name"] == "threshold"


def test_gadget_from_graph_file(runner, tmp_path):
    graph = tmp_path / "c4.txt"
    graph.write_text("0 1\n1 2\n2 3\n3 0\n")

    result = runner.invoke(cli, ["gadget", "--name", "tree-deletion", "--graph", str(graph)])

    assert result.exit_code == 0
    assert json.loads(result.stdout)["certificate"]["optimum"] == 1


def test_gadget_hitting_set(runner):
    result = runner.invoke(cli, ["gadget", "--name", "hitting-set", "--sets", "0,1;1,2"])

    assert result.exit_code == 0
    assert json.loads(result.stdout)["certificate"]["optimum"] == 1


def test_gadget_missing_parameter(runner):
    result = runner.invoke(cli, ["gadget", "--name", "threshold", "--n", "4"])

    assert result.exit_code == 2
    assert "--p" in result.stderr


def test_strength(runner, write_instance):
    path = write_instance(gadgets.gadget_tight_strong(4, 1))

    result = runner.invoke(cli, ["strength", "--instance", path])
    assert result.stdout.strip() == "3"

    result = runner.invoke(cli, ["strength", "--instance", path, "--profile", "d", "--kmax", "2"])
    assert result.stdout.strip() == "2"

    result = runner.invoke(cli, ["strength", "--instance", path, "--profile", "0,1,1,1"])
    assert result.stdout.strip() == "0"


def test_nash(runner, write_instance, two_by_two):
    result = runner.invoke(cli, ["nash", "--instance", write_instance(two_by_two)])

    assert result.stdout.splitlines() == ["0,0", "1,1"]


def test_generate(runner, tmp_path):
    output = tmp_path / "g.json"
    result = runner.invoke(cli, ["generate", "--kind", "tree", "--n", "4", "--seed", "3", "-o", str(output)])

    assert result.exit_code == 0
    assert json.loads(output.read_text())["provenance"]["seed"] == 3


def test_bench(runner):
    result = runner.invoke(cli, ["bench", "--suite", "symmetric-decreasing", "--seeds", "0..1", "--n", "4"])

    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0].startswith("suite,seed,n,method")
    assert len(lines) == 3


def test_bench_to_file(runner, tmp_path):
    output = tmp_path / "report.csv"
    result = runner.invoke(
        cli, ["bench", "--suite", "random-tree", "--seeds", "0", "--n", "3", "-o", str(output)]
    )

    assert result.exit_code == 0
    assert len(output.read_text().splitlines()) == 3


@pytest.mark.parametrize("seed", ["0", "5", "17"])
def test_generate_normal_form(runner, tmp_path, seed):
    output = tmp_path / "nf.json"
    result = runner.invoke(
        cli, ["generate", "--kind", "normal-form", "--n", "3", "--seed", seed, "-o", str(output)]
    )

    assert result.exit_code == 0
    assert json.loads(output.read_text())["kind"] == "normal-form"


def test_solve_orderings_budget(runner, threshold_file):
    command = ["solve", "--instance", threshold_file, "--method", "incremental"]

    result = runner.invoke(cli, [*command, "--budget", "5"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["exhaustive"] is True

    result = runner.invoke(cli, [*command, "--orderings", "5", "--seed", "2"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["exhaustive"] is False
    assert report["feasible"] is True
