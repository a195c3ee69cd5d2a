"""Tests for CLI commands."""

import argparse
import json
from pathlib import Path

import pytest
from pytest import CaptureFixture, MonkeyPatch

from hyperchroma.chains import is_proper_coloring
from hyperchroma.cli import main, parse_p
from hyperchroma.config_manager import ConfigManager
from hyperchroma.experiment import CSV_VERSION_LINE
from hyperchroma.formats import parse_coloring, serialize_hypergraph
from hyperchroma.hypergraph import Hypergraph


@pytest.fixture(autouse=True)
def isolated_home(temp_hyperchroma_home: Path, monkeypatch: MonkeyPatch) -> Path:
    monkeypatch.setattr(ConfigManager, "HYPERCHROMA_HOME", temp_hyperchroma_home)
    return temp_hyperchroma_home


@pytest.fixture
def triangle_file(tmp_path: Path, triangle: Hypergraph) -> Path:
    path = tmp_path / "triangle.hg"
    path.write_text(serialize_hypergraph(triangle), encoding="utf-8")
    return path


@pytest.fixture
def path_file(tmp_path: Path, path_graph: Hypergraph) -> Path:
    path = tmp_path / "path.hg"
    path.write_text(serialize_hypergraph(path_graph), encoding="utf-8")
    return path


def run_failing(argv: list[str]) -> int:
    with pytest.raises(SystemExit) as exc_info:
        main(argv)
    code = exc_info.value.code
    assert isinstance(code, int)
    return code


def test_parse_p() -> None:
    """Test the --p argument type."""
    assert parse_p("auto") == "auto"
    assert parse_p("0.25") == 0.25

    with pytest.raises(argparse.ArgumentTypeError):
        parse_p("often")


def test_cli_color_to_stdout(
    triangle_file: Path, triangle: Hypergraph, capsys: CaptureFixture[str]
) -> None:
    """Test CLI color command writing the coloring to standard output."""
    main(["color", "--input", str(triangle_file), "--r", "3", "--seed", "1"])
    captured = capsys.readouterr()

    coloring = parse_coloring(captured.out, 3, 3)
    assert is_proper_coloring(triangle, coloring, 3)
    assert "✓ Found on attempt" in captured.err


def test_cli_color_to_file_with_report(
    triangle_file: Path, tmp_path: Path, capsys: CaptureFixture[str]
) -> None:
    """Test CLI color command with --out and --report."""
    out = tmp_path / "triangle.col"
    report = tmp_path / "attempts.csv"

    main(
        ["color", "--input", str(triangle_file), "--r", "3"]
        + ["--out", str(out), "--report", str(report)]
    )
    captured = capsys.readouterr()

    assert "✓ Proper 3-coloring written to" in captured.out
    assert out.read_text(encoding="utf-8").startswith("c 0 ")
    assert report.read_text(encoding="utf-8").startswith("attempt,")


def test_cli_color_failure(triangle_file: Path, capsys: CaptureFixture[str]) -> None:
    """Test that an uncolorable input exits with status 1."""
    code = run_failing(["color", "--input", str(triangle_file), "--r", "2", "--max-retries", "5"])
    captured = capsys.readouterr()

    assert code == 1
    assert "✗ No proper 2-coloring after 5 attempts" in captured.err
    assert captured.out == ""


def test_cli_color_verbose_logs_attempts(isolated_home: Path, triangle_file: Path) -> None:
    """Test that --verbose writes one debug line per failed attempt."""
    argv = ["--profile", "loud", "--verbose", "color", "--input", str(triangle_file), "--r", "2"]
    assert run_failing([*argv, "--max-retries", "3"]) == 1

    text = (isolated_home / "logs" / "loud.log").read_text(encoding="utf-8")
    assert sum(" - DEBUG - Attempt " in line for line in text.splitlines()) == 3


def test_cli_color_empty_hypergraph(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """Test coloring a hypergraph without edges."""
    path = tmp_path / "empty.hg"
    path.write_text("v 4\n", encoding="utf-8")

    main(["color", "--input", str(path), "--r", "2"])
    captured = capsys.readouterr()

    assert captured.out == "c 0 1\nc 1 1\nc 2 1\nc 3 1\n"


def test_cli_color_usage_errors(tmp_path: Path, triangle_file: Path) -> None:
    """Test missing arguments and unreadable input."""
    assert run_failing(["color", "--input", str(triangle_file)]) == 2
    assert run_failing(["color", "--input", str(tmp_path / "missing.hg"), "--r", "2"]) == 2

    bad = tmp_path / "bad.hg"
    bad.write_text("v 3\ne 0 7\n", encoding="utf-8")
    assert run_failing(["color", "--input", str(bad), "--r", "2"]) == 2


def test_cli_experiment(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """Test CLI experiment command with the random generator."""
    out = tmp_path / "runs.csv"

    main(
        ["experiment", "--v", "30", "--n", "4", "--m", "5"]
        + ["--trials", "5", "--seed", "1", "--out", str(out)]
    )
    captured = capsys.readouterr()

    assert "✓ 5 trials written to" in captured.out
    assert "success rate: 1.0000" in captured.out
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == CSV_VERSION_LINE
    assert lines[-1].startswith("summary,1,")


def test_cli_experiment_needs_a_source(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """Test that an experiment without input or generator is rejected."""
    code = run_failing(["experiment", "--trials", "2", "--out", str(tmp_path / "runs.csv")])

    assert code == 2
    assert "Invalid experiment" in capsys.readouterr().err


def test_cli_bounds(capsys: CaptureFixture[str]) -> None:
    """Test CLI bounds command for two and three colors."""
    main(["bounds", "--n", "10", "--r", "2"])
    captured = capsys.readouterr()

    assert "q'(r) = 1.41421356237" in captured.out
    rows = [line.split()[0] for line in captured.out.splitlines() if line.startswith("eq")]
    assert rows == ["eq1", "eq2", "eq3", "eq5", "eq6"]

    main(["bounds", "--n", "10", "--r", "3"])
    captured = capsys.readouterr()

    rows = [line.split()[0] for line in captured.out.splitlines() if line.startswith("eq")]
    assert "eq1" not in rows
    assert "eq4" in rows


def test_cli_bounds_invalid_q(capsys: CaptureFixture[str]) -> None:
    """Test that q above q'(r) is a usage error."""
    assert run_failing(["bounds", "--n", "10", "--r", "2", "--q", "2"]) == 2
    assert "✗" in capsys.readouterr().err


def test_cli_verify(triangle_file: Path, tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """Test CLI verify command for proper and improper colorings."""
    good = tmp_path / "good.col"
    good.write_text("c 0 1\nc 1 2\nc 2 3\n", encoding="utf-8")
    bad = tmp_path / "bad.col"
    bad.write_text("c 0 1\nc 1 1\nc 2 2\n", encoding="utf-8")

    main(["verify", "--input", str(triangle_file), "--coloring", str(good), "--r", "3"])
    assert "✓ Proper 3-coloring" in capsys.readouterr().out

    code = run_failing(
        ["verify", "--input", str(triangle_file), "--coloring", str(bad), "--r", "3"]
    )
    assert code == 1
    assert "Edge 0 (0 1) is monochromatic" in capsys.readouterr().err


def test_cli_verify_with_labels(
    path_file: Path, tmp_path: Path, capsys: CaptureFixture[str]
) -> None:
    """Test CLI verify command against an edge labeling."""
    labels = tmp_path / "path.lab"
    labels.write_text("l 0 1\nl 1 2\n", encoding="utf-8")
    good = tmp_path / "good.col"
    good.write_text("c 0 2\nc 1 1\nc 2 1\n", encoding="utf-8")
    bad = tmp_path / "bad.col"
    bad.write_text("c 0 1\nc 1 1\nc 2 2\n", encoding="utf-8")
    common = ["verify", "--input", str(path_file), "--r", "2", "--labels", str(labels)]

    main([*common, "--coloring", str(good)])
    assert "✓ Coloring is good for the labeling" in capsys.readouterr().out

    assert run_failing([*common, "--coloring", str(bad)]) == 1
    assert "Edge 0 (0 1) is colored entirely in its label" in capsys.readouterr().err


def test_cli_oracle_chromatic(triangle_file: Path, capsys: CaptureFixture[str]) -> None:
    """Test CLI oracle chromatic command."""
    main(["oracle", "chromatic", "--input", str(triangle_file)])

    assert capsys.readouterr().out.strip() == "3"


def test_cli_oracle_m(capsys: CaptureFixture[str]) -> None:
    """Test CLI oracle m command with and without a witness."""
    main(["oracle", "m", "--n", "2", "--r", "2", "--max-vertices", "4", "--max-edges", "4"])
    captured = capsys.readouterr()
    assert "✓ m(2,2) = 3" in captured.out

    main(["oracle", "m", "--n", "3", "--r", "2", "--max-vertices", "7", "--max-edges", "3"])
    captured = capsys.readouterr()
    assert "No witness with at most 3 edges on 7 vertices; search complete" in captured.out
    assert "Fano plane" in captured.out


def test_cli_oracle_prop1(capsys: CaptureFixture[str]) -> None:
    """Test CLI oracle prop1 command on a small family."""
    main(["oracle", "prop1", "--max-vertices", "4", "--max-edges", "2"])

    assert "✓ ordered chains over 66 instances: no mismatches" in capsys.readouterr().out


def test_cli_oracle_prop2(path_file: Path, tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """Test CLI oracle prop2 command for a single labeled instance and a family."""
    labels = tmp_path / "path.lab"
    labels.write_text("l 0 1\nl 1 2\n", encoding="utf-8")

    main(["oracle", "prop2", "--input", str(path_file), "--labels", str(labels), "--r", "2"])
    captured = capsys.readouterr()
    assert "good coloring exists: True" in captured.out
    assert "✓ Both sides agree" in captured.out

    main(["oracle", "prop2", "--max-vertices", "3", "--max-edges", "2", "--labelings", "3"])
    assert "no mismatches" in capsys.readouterr().out

    assert run_failing(["oracle", "prop2", "--labels", str(labels), "--r", "2"]) == 2


def test_cli_lll(capsys: CaptureFixture[str]) -> None:
    """Test CLI lll command for feasible and infeasible settings."""
    main(["lll", "--n", "20", "--r", "2", "--max-degree", "1", "--find-max"])
    captured = capsys.readouterr()
    assert "largest accepted degree:" in captured.out
    assert "✓ D=1:" in captured.out

    assert run_failing(["lll", "--n", "20", "--r", "2", "--max-degree", "1", "--p", "0.99"]) == 1
    assert "No (x, y) found for D=1" in capsys.readouterr().err


def test_cli_config_show_and_set(capsys: CaptureFixture[str]) -> None:
    """Test CLI config and config set commands."""
    main(["config"])
    captured = capsys.readouterr()
    assert "# Configuration for profile: default" in captured.out

    main(["--profile", "wide", "config", "set", "r", "3"])
    assert "✓ Set r=3 for profile 'wide'" in capsys.readouterr().out
    assert ConfigManager.load_for_profile("wide").r == 3
    assert ConfigManager.load_for_profile("default").r == 2

    main(["--profile", "wide", "config"])
    shown = capsys.readouterr().out.split("\n", 1)[1]
    assert json.loads(shown)["r"] == 3


def test_cli_config_set_errors(capsys: CaptureFixture[str]) -> None:
    """Test unknown keys and invalid values."""
    assert run_failing(["config", "set", "colors", "3"]) == 1
    assert "Unknown config key: colors" in capsys.readouterr().err

    assert run_failing(["config", "set", "r", "1"]) == 1
    assert "Invalid value for r" in capsys.readouterr().err


def test_cli_without_command(capsys: CaptureFixture[str]) -> None:
    """Test that no command prints help and exits with status 2."""
    assert run_failing([]) == 2
    assert "usage:" in capsys.readouterr().out


def test_cli_creates_global_config(isolated_home: Path, capsys: CaptureFixture[str]) -> None:
    """Test that a first command writes the default global config and keeps later edits."""
    global_path = isolated_home / ConfigManager.GLOBAL_CONFIG_FILE
    assert not global_path.exists()

    main(["bounds", "--n", "10", "--r", "2"])
    capsys.readouterr()

    assert json.loads(global_path.read_text(encoding="utf-8"))["max_retries"] == 1000

    global_path.write_text(json.dumps({"max_retries": 5}), encoding="utf-8")
    main(["config"])

    assert json.loads(capsys.readouterr().out.split("\n", 1)[1])["max_retries"] == 5
