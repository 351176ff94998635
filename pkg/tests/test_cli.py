"""
End-to-end tests of the rarelens command line
"""

import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from rarelens import __version__
from rarelens.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def predictions_csv(tmp_path, skewed_targets):
    path = tmp_path / "predictions.csv"
    shrunk = skewed_targets * 0.9 + 1.0
    pd.DataFrame({"y_true": skewed_targets, "y_pred": shrunk}).to_csv(path, index=False)
    return path


@pytest.fixture
def bench_config(tmp_path, mixed_csv):
    path = tmp_path / "bench.json"
    path.write_text(json.dumps({
        "datasets": [{"path": mixed_csv.name, "target": "y"}],
        "strategies": {"none": None, "ru": {"rates": ["balance"]}},
        "folds": 2,
        "repeats": 1,
        "seed": 5,
        "knn_k": 3,
    }))
    return path


def test_version(runner):
    result = runner.invoke(main, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


class TestRelevanceCommand:

    def test_json_to_stdout(self, runner, mixed_csv):
        result = runner.invoke(main, ['relevance', str(mixed_csv), '-t', 'y'])

        assert result.exit_code == 0, result.output
        document = json.loads(result.output)
        assert len(document["relevance"]["control_points"]) == 3
        assert document["bumps"]
        assert document["meta"]["generator"] == "RareLens"

    def test_file_and_curve(self, runner, tmp_path, mixed_csv):
        output = tmp_path / "rel.json"
        curve = tmp_path / "curve.csv"
        result = runner.invoke(main, ['relevance', str(mixed_csv), '-t', 'y', '-o', str(output),
                                      '--curve', str(curve), '--samples', '25'])

        assert result.exit_code == 0, result.output
        assert "segments" in json.loads(output.read_text())["relevance"]
        sampled = pd.read_csv(curve)
        assert list(sampled.columns) == ["y", "phi"]
        assert len(sampled) == 25
        assert sampled["phi"].between(0, 1).all()

    def test_custom_control_points(self, runner, tmp_path, mixed_csv):
        points = tmp_path / "points.csv"
        points.write_text("y,rel\n10,0\n25,1\n")
        result = runner.invoke(main, ['relevance', str(mixed_csv), '-t', 'y',
                                      '--control-points', str(points)])

        assert result.exit_code == 0, result.output
        ys = [p["y"] for p in json.loads(result.output)["relevance"]["control_points"]]
        assert ys == [10.0, 25.0]

    def test_missing_target_column(self, runner, mixed_csv):
        result = runner.invoke(main, ['relevance', str(mixed_csv), '-t', 'nope'])
        assert result.exit_code == 1
        assert "Error" in result.output


class TestResampleCommand:

    def test_writes_csv_and_report(self, runner, tmp_path, mixed_csv):
        output = tmp_path / "out" / "resampled.csv"
        result = runner.invoke(main, ['resample', str(mixed_csv), '-t', 'y', '-s', 'ro',
                                      '--seed', '7', '--output', str(output)])

        assert result.exit_code == 0, result.output
        frame = pd.read_csv(output)
        report = json.loads(output.with_suffix('.json').read_text())

        assert report["strategy"] == "ro"
        assert report["input_size"] == 60
        assert report["output_size"] == len(frame) > 60
        assert set(frame["colour"]) <= {"red", "green", "blue"}

    def test_same_seed_same_output(self, runner, tmp_path, mixed_csv):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            result = runner.invoke(main, ['resample', str(mixed_csv), '-t', 'y', '-s', 'smt',
                                          '--seed', '3', '--output', str(path)])
            assert result.exit_code == 0, result.output
        pd.testing.assert_frame_equal(pd.read_csv(paths[0]), pd.read_csv(paths[1]))

    def test_explicit_rates_from_u(self, runner, tmp_path, mixed_csv):
        output = tmp_path / "ru.csv"
        result = runner.invoke(main, ['resample', str(mixed_csv), '-t', 'y', '-s', 'ru',
                                      '--u', '0.5', '--output', str(output)])

        assert result.exit_code == 0, result.output
        report = json.loads(output.with_suffix('.json').read_text())
        assert report["params"]["rates"] == "explicit"
        assert report["output_size"] < 60

    def test_explicit_rates_need_both_sides(self, runner, tmp_path, mixed_csv):
        result = runner.invoke(main, ['resample', str(mixed_csv), '-t', 'y', '-s', 'smt',
                                      '--u', '0.5', '--output', str(tmp_path / "x.csv")])
        assert result.exit_code == 1
        assert "needs o" in result.output

    def test_unknown_strategy_is_usage_error(self, runner, tmp_path, mixed_csv):
        result = runner.invoke(main, ['resample', str(mixed_csv), '-t', 'y', '-s', 'adasyn',
                                      '--output', str(tmp_path / "x.csv")])
        assert result.exit_code == 2


class TestEvaluateCommand:

    def test_with_dataset_relevance(self, runner, mixed_csv, predictions_csv):
        result = runner.invoke(main, ['evaluate', str(predictions_csv),
                                      '--data', str(mixed_csv), '-t', 'y', '--curve'])

        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["mae"] > 0
        assert report["sera"] > 0
        assert report["ser_curve"][0]["t"] == 0.0

    def test_with_saved_relevance(self, runner, tmp_path, mixed_csv, predictions_csv):
        rel_path = tmp_path / "rel.json"
        runner.invoke(main, ['relevance', str(mixed_csv), '-t', 'y', '-o', str(rel_path)])

        from_saved = runner.invoke(main, ['evaluate', str(predictions_csv),
                                          '--relevance', str(rel_path)])
        from_data = runner.invoke(main, ['evaluate', str(predictions_csv),
                                         '--data', str(mixed_csv), '-t', 'y'])

        assert from_saved.exit_code == 0, from_saved.output
        saved, direct = json.loads(from_saved.output), json.loads(from_data.output)
        assert saved["sera"] == pytest.approx(direct["sera"])
        assert saved["mse"] == pytest.approx(direct["mse"])

    def test_report_file(self, runner, tmp_path, mixed_csv, predictions_csv):
        output = tmp_path / "report.json"
        result = runner.invoke(main, ['evaluate', str(predictions_csv), '--data',
                                      str(mixed_csv), '-t', 'y', '-o', str(output)])

        assert result.exit_code == 0, result.output
        report = json.loads(output.read_text())
        expected_mse = float(np.mean((pd.read_csv(predictions_csv).diff(axis=1)["y_pred"]) ** 2))
        assert report["mse"] == pytest.approx(expected_mse)

    def test_needs_a_relevance_source(self, runner, predictions_csv):
        result = runner.invoke(main, ['evaluate', str(predictions_csv)])
        assert result.exit_code == 1
        assert "--relevance" in result.output

    def test_missing_prediction_column(self, runner, tmp_path, mixed_csv):
        path = tmp_path / "bad.csv"
        path.write_text("y_true,guess\n1,2\n")
        result = runner.invoke(main, ['evaluate', str(path), '--data', str(mixed_csv),
                                      '-t', 'y'])
        assert result.exit_code == 1
        assert "y_pred" in result.output


class TestBenchCommand:

    def test_quiet_run_writes_reports(self, runner, tmp_path, bench_config):
        out_dir = tmp_path / "results"
        result = runner.invoke(main, ['bench', str(bench_config), '-d', str(out_dir), '--quiet'])

        assert result.exit_code == 0, result.output
        runs = json.loads((out_dir / "runs.json").read_text())
        assert runs["meta"]["seed"] == 5
        assert "generated_at" not in runs["meta"]
        assert len(runs["runs"]) == 2 * 2
        for name in ("wins.csv", "ranks.csv", "results.csv", "sizes.csv", "timings.csv"):
            assert (out_dir / name).exists()

    def test_runs_are_reproducible(self, runner, tmp_path, bench_config):
        texts = []
        for name in ("first", "second"):
            out_dir = tmp_path / name
            result = runner.invoke(main, ['bench', str(bench_config), '-d', str(out_dir),
                                          '--quiet'])
            assert result.exit_code == 0, result.output
            texts.append((out_dir / "runs.json").read_text())
        assert texts[0] == texts[1]

    def test_seed_override(self, runner, tmp_path, bench_config):
        out_dir = tmp_path / "results"
        result = runner.invoke(main, ['bench', str(bench_config), '-d', str(out_dir),
                                      '--seed', '99', '--quiet'])
        assert result.exit_code == 0, result.output
        assert json.loads((out_dir / "runs.json").read_text())["meta"]["seed"] == 99

    def test_summary_tables(self, runner, tmp_path, bench_config):
        result = runner.invoke(main, ['bench', str(bench_config), '-d', str(tmp_path / "r")])
        assert result.exit_code == 0, result.output
        assert "Wins" in result.output
        assert "sera (mean ± sd)" in result.output

    def test_missing_config(self, runner, tmp_path):
        result = runner.invoke(main, ['bench', str(tmp_path / "none.json")])
        assert result.exit_code == 1
        assert "not found" in result.output


class TestProfileCommand:

    def test_profile_files(self, runner, tmp_path, mixed_csv):
        output = tmp_path / "profiles.json"
        result = runner.invoke(main, ['profile', str(mixed_csv), '-t', 'y', '-o', str(output)])

        assert result.exit_code == 0, result.output
        profile = json.loads(output.read_text())["profiles"]["mixed"]
        assert profile["N"] == 60
        assert (profile["p_total"], profile["p_nom"], profile["p_num"]) == (3, 1, 2)
        assert profile["nRare"] >= 4

    def test_profile_from_config(self, runner, tmp_path, bench_config):
        output = tmp_path / "profiles.json"
        result = runner.invoke(main, ['profile', '-c', str(bench_config), '-o', str(output)])
        assert result.exit_code == 0, result.output
        assert list(json.loads(output.read_text())["profiles"]) == ["mixed"]

    def test_json_to_stdout(self, runner, mixed_csv):
        result = runner.invoke(main, ['profile', str(mixed_csv), '-t', 'y', '--json'])

        assert result.exit_code == 0, result.output
        document = json.loads(result.output)
        assert document["meta"]["generator"] == "RareLens"
        assert document["profiles"]["mixed"]["N"] == 60

    def test_needs_inputs(self, runner):
        result = runner.invoke(main, ['profile'])
        assert result.exit_code == 1
