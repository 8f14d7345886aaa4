"""
Tests for the command line: output, exit codes and determinism.
"""

import json

import pytest
from click.testing import CliRunner

from fnlie import __version__
from fnlie.cli import cli


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.setenv("HOME", str(tmp_path))
    for key in ("FNLIE_SEED", "FNLIE_TRIALS", "FNLIE_FORMAT", "FNLIE_JOBS", "FNLIE_DIM"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
    return CliRunner(mix_stderr=False)


def _path(fixtures_dir, name):
    return str(fixtures_dir / name)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_eval_text(runner, fixtures_dir):
    result = runner.invoke(cli, ["eval", "--file", _path(fixtures_dir, "hermitian_connection.fn"), "curv(c)"])
    assert result.exit_code == 0
    assert "result: -2i dx^dy (x) I\n" in result.stdout
    assert "outcome: value\n" in result.stdout


def test_eval_json(runner, fixtures_dir):
    result = runner.invoke(cli, ["eval", "-f", _path(fixtures_dir, "vector_fields.fn"), "fn(X, Y)",
                                 "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["values"]["result"]["components"] == {"d[]": {"x": "x", "y": "-y"}}


def test_eval_usage_errors(runner, fixtures_dir):
    result = runner.invoke(cli, ["eval", "-f", _path(fixtures_dir, "plane_forms.fn"), "d(nothing)"])
    assert result.exit_code == 2
    assert "nothing" in result.stderr
    result = runner.invoke(cli, ["eval", "-f", "missing.fn", "d(a)"])
    assert result.exit_code == 2


def test_check_exit_codes(runner, fixtures_dir):
    hermitian = _path(fixtures_dir, "hermitian_form.fn")
    assert runner.invoke(cli, ["check", "-f", hermitian, "P", "hermitian"]).exit_code == 0
    result = runner.invoke(cli, ["check", "-f", hermitian, "Q", "hermitian"])
    assert result.exit_code == 1
    assert "outcome: fail" in result.stdout
    assert "reason: " in result.stdout
    assert runner.invoke(cli, ["check", "-f", hermitian, "Q", "kahler"]).exit_code == 2


def test_check_hermitian_connection(runner, fixtures_dir):
    result = runner.invoke(cli, ["check", "-f", _path(fixtures_dir, "hermitian_connection.fn"),
                                 "c", "hermitian-connection"])
    assert result.exit_code == 0
    assert "potential: x dy" in result.stdout
    result = runner.invoke(cli, ["check", "-f", _path(fixtures_dir, "linear_connection.fn"),
                                 "c", "hermitian-connection"])
    assert result.exit_code == 1


def test_classify_both_directions(runner, fixtures_dir):
    pair = _path(fixtures_dir, "pair.fn")
    result = runner.invoke(cli, ["classify", "-f", pair, "c", "P", "--inverse"])
    assert result.exit_code == 0
    assert "round_trip: yes" in result.stdout
    result = runner.invoke(cli, ["classify", "-f", pair, "c", "nothing"])
    assert result.exit_code == 2


def test_verify_is_deterministic(runner):
    arguments = ["verify", "fn-jacobi", "--dim", "2", "--max-degree", "1", "--trials", "3", "--seed", "42"]
    first = runner.invoke(cli, arguments)
    second = runner.invoke(cli, arguments)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    assert "trials: 3/3 passed" in first.stdout


def test_verify_counterexample_file(runner, fixtures_dir, tmp_path):
    model = tmp_path / "broken.fn"
    model.write_text(
        "chart E(x, y)\n"
        "connection c = hermitian(x*d y)\n"
        "tvf p_underline:0 = @x\n"
        "form p_bar:0 = y\n"
        "projtvf xi:0 = I\n",
        encoding="utf-8",
    )
    result = runner.invoke(cli, ["verify", "inverse-pair", "--file", str(model)])
    assert result.exit_code == 1
    assert "HermitianError" in result.stdout
    result = runner.invoke(cli, ["verify", "jacobi-defect", "--file",
                                 _path(fixtures_dir, "jacobi_defect_nonclosed.fn"), "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["details"]["defect"] == "1/2"


def test_verify_unknown_suite(runner):
    result = runner.invoke(cli, ["verify", "fn-nonsense"])
    assert result.exit_code == 2
    assert "fn-antisym" in result.stderr


def test_output_file(runner, fixtures_dir, tmp_path):
    target = tmp_path / "report.txt"
    result = runner.invoke(cli, ["eval", "-f", _path(fixtures_dir, "plane_forms.fn"), "d(a)", "-o", str(target)])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert "result: dx^dy" in target.read_text(encoding="utf-8")


def test_fmt(runner, fixtures_dir):
    result = runner.invoke(cli, ["fmt", _path(fixtures_dir, "plane_forms.fn")])
    assert result.exit_code == 0
    assert result.stdout.startswith("chart E(x, y)\nform a:1 = x*d y\n")


def test_suites(runner):
    result = runner.invoke(cli, ["suites"])
    assert result.exit_code == 0
    assert len(result.stdout.splitlines()) == 13
    assert result.stdout.startswith("fn-antisym")


def test_config(runner, tmp_path):
    result = runner.invoke(cli, ["config", "trials", "5"])
    assert result.exit_code == 0
    assert (tmp_path / ".fnlie" / "config").read_text(encoding="utf-8") == "trials=5\n"
    assert runner.invoke(cli, ["config", "trials"]).stdout == "trials=5\n"
    assert "trials=5\n" in runner.invoke(cli, ["config"]).stdout
    assert runner.invoke(cli, ["config", "seed"]).exit_code == 1
    assert runner.invoke(cli, ["config", "trials", "lots"]).exit_code == 2
    assert runner.invoke(cli, ["config", "colour", "blue"]).exit_code == 2


def test_environment_overrides_config(runner, monkeypatch):
    runner.invoke(cli, ["config", "format", "text"])
    monkeypatch.setenv("FNLIE_FORMAT", "json")
    result = runner.invoke(cli, ["verify", "fn-antisym", "--trials", "1"])
    assert json.loads(result.stdout)["trials"] == {"total": 1, "passed": 1}
    monkeypatch.setenv("FNLIE_FORMAT", "yaml")
    assert runner.invoke(cli, ["verify", "fn-antisym", "--trials", "1"]).exit_code == 2


def test_oversized_chart_is_a_usage_error(runner):
    result = runner.invoke(cli, ["verify", "fn-antisym", "--dim", "9", "--trials", "1"])
    assert result.exit_code == 2
    assert "dim must be between 1 and 5" in result.stderr


def test_internal_errors_are_failures(runner, fixtures_dir, monkeypatch):
    def broken(*args, **kwargs):
        raise ValueError("Multi-index (1, 0) is not strictly increasing of length 2")

    monkeypatch.setattr("fnlie.cli.cmd_eval", broken)
    result = runner.invoke(cli, ["eval", "-f", _path(fixtures_dir, "plane_forms.fn"), "d(a)"])
    assert result.exit_code == 1
    assert "internal error" in result.stderr
