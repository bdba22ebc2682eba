import csv
import io
import json

import pytest
from click.testing import CliRunner

from gapscope.cli import main
from gapscope.gaps import GapReport, ThreeGapPrediction
from gapscope.distribution import DistributionCurve
from gapscope.zipper import ZipperedRectangles


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def iet_spec_file(tmp_path):
    path = tmp_path / "demo_iet.json"
    path.write_text(
        json.dumps(
            {
                "lengths": ["sqrt(1/3)", "sqrt(1/2) - sqrt(1/3)", "1 - sqrt(1/2)"],
                "permutation": [3, 2, 1],
            }
        )
    )
    return str(path)


def run_json(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_gaps_golden_json(runner):
    data = run_json(runner, ["gaps", "--alpha", "sqrt(1/2)", "--n", "9"])
    assert data["kind"] == "gap_report"
    assert data["schema_version"] == 1
    assert [c["count"] for c in data["clusters"]] == [2, 6, 1]
    report = GapReport.from_json(data)
    assert report.num_points == 9


def test_gaps_csv_matches_json(runner):
    data = run_json(runner, ["gaps", "--alpha", "sqrt(1/2)", "--n", "9"])
    result = runner.invoke(
        main, ["gaps", "--alpha", "sqrt(1/2)", "--n", "9", "--format", "csv"]
    )
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.output)))
    assert len(rows) == len(data["clusters"])
    for row, cluster in zip(rows, data["clusters"]):
        assert float(row["length"]) == cluster["length"]
        assert int(row["count"]) == cluster["count"]


def test_cli_deterministic(runner):
    args = ["gaps", "--alpha", "sqrt(1/2)", "--n", "40"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2


def test_gaps_from_iet_file(runner, iet_spec_file):
    data = run_json(runner, ["gaps", "--iet", iet_spec_file, "--n", "8"])
    assert len(data["clusters"]) == 3


def test_gaps_requires_exactly_one_source(runner, iet_spec_file):
    result = runner.invoke(main, ["gaps", "--n", "9"])
    assert result.exit_code == 2
    result = runner.invoke(
        main, ["gaps", "--alpha", "1/2", "--iet", iet_spec_file, "--n", "9"]
    )
    assert result.exit_code == 2


def test_cycle_notation_spec_file(runner, tmp_path):
    path = tmp_path / "cyc.json"
    path.write_text(
        json.dumps(
            {
                "lengths": [0.3, 0.2, 0.1, 0.15, 0.25],
                "permutation": {"cycles": [[1, 5, 2, 3, 4]]},
            }
        )
    )
    data = run_json(runner, ["gaps", "--iet", str(path), "--n", "12"])
    assert data["n"] == 12


def test_predict_with_sigma(runner):
    data = run_json(runner, ["predict", "--alpha", "sqrt(1/2)", "--n", "9", "--sigma"])
    assert data["case"] == "generic"
    assert data["counts"] == [6, 1, 2]
    assert data["sigma"] == [0, 3, 6, 2, 5, 8, 1, 4, 7]
    ThreeGapPrediction.from_json(data)


def test_zipper_json_roundtrip(runner):
    data = run_json(runner, ["zipper", "--alpha", "sqrt(1/2)", "--n", "9"])
    zr = ZipperedRectangles.from_json(data)
    assert zr.case == "generic"


def test_limit_value(runner):
    data = run_json(runner, ["limit", "--z", "0.5"])
    assert abs(data["points"][0]["value"] - 0.6960364490729867) < 1e-12


def test_limit_flags_branch_boundary(runner):
    data = run_json(runner, ["limit", "--z", "1.0"])
    assert data.get("boundary_values") == [1.0]


def test_dist_csv_columns(runner):
    result = runner.invoke(
        main,
        ["dist", "--z-grid", "0.25:0.75:0.25", "--n", "60", "--format", "csv"],
    )
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(io.StringIO(result.output)))
    assert [r["z"] for r in rows] == ["0.25", "0.5", "0.75"]
    assert all(r["kind"] == "exact" and r["N"] == "60" for r in rows)
    data = run_json(runner, ["dist", "--z-grid", "0.25:0.75:0.25", "--n", "60"])
    curve = DistributionCurve.from_json(data)
    assert [float(r["value"]) for r in rows] == list(curve.values)


def test_dist_empirical_needs_iet(runner):
    result = runner.invoke(
        main, ["dist", "--kind", "empirical", "--z", "0.5", "--n", "30"]
    )
    assert result.exit_code == 2


def test_dist_empirical_runs(runner, iet_spec_file):
    data = run_json(
        runner,
        [
            "dist", "--kind", "empirical", "--iet", iet_spec_file, "--z", "0.5",
            "--n", "30", "--grid", "20", "--range", "0.1,0.9",
        ],
    )
    assert data["curve_kind"] == "empirical"
    assert 0.0 <= data["points"][0]["value"] <= 1.0


def test_graph_edge_list_text(runner):
    result = runner.invoke(
        main,
        ["graph", "--alpha", "sqrt(1/2)", "--n", "5", "--format", "text"],
    )
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("# gap graph")
    assert sum(1 for l in lines if l.startswith("v ")) == 5


def test_graph_forest_json(runner, iet_spec_file):
    data = run_json(
        runner, ["graph", "--iet", iet_spec_file, "--n", "8", "--kind", "fgaps"]
    )
    assert data["kind"] == "gap_forest"


def test_verify_three_gap_passes(runner):
    result = runner.invoke(
        main, ["verify", "three-gap", "--alpha", "sqrt(1/2)", "--n", "9"]
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["status"] == "pass"


def test_verify_failure_exits_one(runner):
    result = runner.invoke(
        main,
        ["verify", "three-gap", "--alpha", "sqrt(1/2)", "--n", "9", "--eps", "1e-18"],
    )
    assert result.exit_code == 1
    data = json.loads(result.output)
    assert data["status"] == "fail" and data["failures"]


def test_verify_dplus2_and_forest(runner, iet_spec_file):
    assert runner.invoke(main, ["verify", "dplus2", "--iet", iet_spec_file, "--n", "8"]).exit_code == 0
    assert runner.invoke(main, ["verify", "forest", "--iet", iet_spec_file, "--n", "8"]).exit_code == 0
    assert runner.invoke(main, ["verify", "zipper", "--alpha", "sqrt(1/2)", "--n", "9"]).exit_code == 0
    assert runner.invoke(main, ["verify", "bosh", "--alpha", "sqrt(1/2)", "--n", "9"]).exit_code == 0


def test_verify_dist_convergence_small(runner):
    result = runner.invoke(
        main, ["verify", "dist-convergence", "--n", "50", "--n", "200"]
    )
    assert result.exit_code == 0


def test_unknown_flag_exits_two(runner):
    assert runner.invoke(main, ["gaps", "--bogus", "1"]).exit_code == 2


def test_malformed_surd_exits_two_with_position(runner):
    result = runner.invoke(main, ["gaps", "--alpha", "sqrt(2", "--n", "9"])
    assert result.exit_code == 2
    assert "position 6" in result.output


def test_invalid_iet_file_exits_two(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"lengths\": [0.5, 0.5]}")
    assert runner.invoke(main, ["gaps", "--iet", str(bad), "--n", "5"]).exit_code == 2
    worse = tmp_path / "worse.json"
    worse.write_text("not json")
    assert runner.invoke(main, ["gaps", "--iet", str(worse), "--n", "5"]).exit_code == 2


def test_env_precision_default(runner, monkeypatch):
    monkeypatch.setenv("GAPSCOPE_PRECISION", "80")
    data = run_json(runner, ["predict", "--alpha", "sqrt(1/2)", "--n", "9"])
    assert data["counts"] == [6, 1, 2]
    monkeypatch.setenv("GAPSCOPE_PRECISION", "not-a-number")
    result = runner.invoke(main, ["predict", "--alpha", "sqrt(1/2)", "--n", "9"])
    assert result.exit_code == 2
