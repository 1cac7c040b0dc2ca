import json

import pytest
from click.testing import CliRunner

from src.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, args):
    result = runner.invoke(cli, args + ["--json", "--workers", "1"])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_lc_text_output(runner):
    result = runner.invoke(cli, ["lc", "--bits", "11110000"])
    assert result.exit_code == 0
    assert result.output.strip() == "L = 5"


@pytest.mark.parametrize(
    "args, expected",
    [
        (["--bits", "11110000"], 5),
        (["--positions", "0", "--n", "3"], 8),
        (["--bits", "00000000"], 0),
        (["--hex", "f0", "--n", "3"], 5),
    ],
)
def test_lc_json(runner, args, expected):
    document = run_json(runner, ["lc"] + args)
    assert document["command"] == "lc"
    assert document["status"] == "success"
    assert document["result"]["linear_complexity"] == expected
    assert document["timing_ms"] is None


def test_lc_on_a_long_period(runner):
    document = run_json(runner, ["lc", "--positions", "0,524288", "--n", "20"])
    assert document["result"]["linear_complexity"] == 524288
    assert document["result"]["cross_check"]


def test_klc(runner):
    document = run_json(runner, ["klc", "--bits", "11110000", "--k", "3"])
    assert document["result"]["klc"] == 5
    assert document["result"]["stable"]

    document = run_json(runner, ["klc", "--bits", "11110000", "--k", "4"])
    assert document["result"]["klc"] == 0
    assert not document["result"]["stable"]

    document = run_json(runner, ["klc", "--positions", "0,1,3,4,7,8", "--n", "4", "--k", "2"])
    assert document["result"]["klc"] == 10


def test_spectrum_and_decompose(runner):
    document = run_json(runner, ["spectrum", "--positions", "0,1,3,4,7,8", "--n", "4"])
    assert document["result"]["points"] == [[0, 15], [2, 10], [4, 8], [6, 0]]

    result = runner.invoke(cli, ["decompose", "--positions", "0,1,3,4,7,8", "--n", "4"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert [line.split(" L=")[1].split()[0] for line in lines[:3]] == ["8", "12", "15"]


def test_census_verify(runner):
    document = run_json(runner, ["census", "--n", "3", "--edges", "0", "--verify"])
    assert document["result"]["predicted"] == "16"
    assert document["result"]["observed"] == "16"

    document = run_json(runner, ["census", "--n", "3", "--edges", "0", "--edges", "2"])
    assert document["result"]["predicted"] == "32"

    document = run_json(runner, ["census", "--n", "30", "--edges", "0,1,2,3,4,5,6,7,8,9"])
    assert len(document["result"]["predicted"]) == 6166


def test_construct_and_maxklc(runner):
    result = runner.invoke(cli, ["construct", "--n", "3", "--edges", "0,1"])
    assert result.exit_code == 0
    assert "11110000" in result.output

    document = run_json(runner, ["maxklc", "--n", "3", "--k", "2"])
    assert document["result"]["max_klc"] == 5


def test_json_output_is_deterministic(runner):
    args = ["spectrum", "--positions", "0,1,3,4,7,8", "--n", "4", "--json"]
    first = runner.invoke(cli, args + ["--workers", "1"])
    second = runner.invoke(cli, args + ["--workers", "2"])
    assert first.stdout == second.stdout


def test_timing_is_opt_in(runner):
    document = run_json(runner, ["kmin", "--bits", "11110000", "--timing"])
    assert document["timing_ms"] is not None
    assert document["result"]["k_min"] == 4


@pytest.mark.parametrize(
    "args, exit_code",
    [
        (["lc", "--bits", "111"], 2),
        (["lc", "--bits", "1100", "--positions", "0"], 2),
        (["lc"], 2),
        (["lc", "--hex", "zz", "--n", "3"], 2),
        (["klc", "--bits", "1100", "--k", "9"], 3),
        (["klc", "--bits", "11110000", "--k", "3", "--budget-patterns", "10"], 4),
        (["klc", "--bits", "11110000", "--k", "3", "--budget-weight", "0"], 3),
        (["construct", "--n", "3", "--edges", "0,x"], 2),
        (["quad-audit", "--n", "7"], 3),
        (["lc", "--positions", "\u00b2", "--n", "3"], 2),
        (["lc", "--positions", "1,\u0661", "--n", "3"], 2),
        (["lc", "--hex", "\u0661f", "--n", "3"], 2),
        (["census", "--n", "31", "--edges", "0"], 3),
        (["census", "--n", "30", "--edges", ",".join(str(e) for e in range(30))], 4),
        (["census", "--n", "30", "--edges", "0,1,2,3,4,5,6,7,8,9", "--verify"], 4),
    ],
)
def test_error_paths(runner, args, exit_code):
    result = runner.invoke(cli, args)
    assert result.exit_code == exit_code
    assert result.stdout == ""
    assert result.stderr.startswith("error: ")
    assert len(result.stderr.strip().splitlines()) == 1


def test_scan_and_quad_audit_csv(runner, tmp_path):
    scan_csv = tmp_path / "scan.csv"
    result = runner.invoke(
        cli,
        ["scan", "--n", "3", "--filter", "all_even_weight", "--csv", str(scan_csv),
         "--workers", "1"],
    )
    assert result.exit_code == 0
    assert result.output.startswith("examined 256")
    assert scan_csv.read_text().startswith("positions,predicted_ks,oracle_ks,cubes")

    audit_csv = tmp_path / "audit.csv"
    document = run_json(runner, ["quad-audit", "--n", "3", "--csv", str(audit_csv)])
    assert document["result"]["cases"] == (
        document["result"]["agreements"] + document["result"]["disagreements"]
    )
    assert audit_csv.exists()


def test_workers_from_environment(runner):
    result = runner.invoke(
        cli, ["lc", "--bits", "1100", "--json"], env={"SEQCUBE_WORKERS": "1"}
    )
    assert result.exit_code == 0
