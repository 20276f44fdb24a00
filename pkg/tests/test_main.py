"""
Tests for CLI entry point (__main__.py).

Tests argument parsing, exit codes, and output handling.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from loop_factor.documents import identity_document, loop_to_document
from loop_factor.formsla import MatrixC
from loop_factor.loops import GroupContext, MatrixLoop

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def cli(tmp_path):
    """Run the CLI in tmp_path so no stray config file is picked up."""

    def _run(*args, stdin=None):
        env = dict(os.environ)
        env["PYTHONPATH"] = str(ROOT) + os.pathsep + env.get("PYTHONPATH", "")
        return subprocess.run(
            [sys.executable, "-m", "loop_factor", *args],
            capture_output=True,
            text=True,
            cwd=tmp_path,
            env=env,
            input=stdin,
        )

    return _run


class TestCLIBasic:
    """Tests for basic CLI functionality."""

    def test_help_flag(self, cli):
        """--help should show usage and exit 0."""
        result = cli("--help")
        assert result.returncode == 0
        assert "usage:" in result.stdout.lower()
        assert "loop-factor" in result.stdout

    def test_version_flag(self, cli):
        """--version should show version and exit 0."""
        result = cli("--version")
        assert result.returncode == 0
        assert "loop-factor" in result.stdout

    def test_missing_command(self, cli):
        """A subcommand is required."""
        result = cli()
        assert result.returncode == 2


class TestCLIExitCodes:
    """Tests for CLI exit codes."""

    def test_missing_file_exits_3(self, cli):
        result = cli("check", "/nonexistent/loop.json")
        assert result.returncode == 3
        assert "Error" in result.stderr

    def test_malformed_json_exits_3(self, cli, write_json, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"group": "so", "n": ')
        result = cli("check", str(bad))
        assert result.returncode == 3
        assert "line" in result.stderr

    def test_non_member_exits_1(self, cli, write_json):
        loop = MatrixLoop.constant(MatrixC.diag([2, 1, 1]))
        path = write_json("loop.json", loop_to_document(loop, GroupContext.so(3)))
        result = cli("check", path)
        assert result.returncode == 1
        assert json.loads(result.stdout)["member"] is False
        assert "Error:" in result.stderr

    def test_factor_rejects_gl(self, cli, write_json):
        path = write_json("loop.json", identity_document(GroupContext.gl(2)))
        result = cli("factor", path)
        assert result.returncode == 1

    def test_bad_pqr_exits_1(self, cli):
        result = cli("affine", "curvature", "--pqr", "z1=3")
        assert result.returncode == 1


class TestCLIWorkflow:
    """random -> check -> factor -> verify."""

    @pytest.mark.parametrize(
        "group,n", [("so", "3"), ("csp", "2")], ids=["so3", "csp2"]
    )
    def test_round_trip(self, cli, tmp_path, group, n):
        loop = tmp_path / "loop.json"
        truth = tmp_path / "truth.json"
        result = cli(
            "random", "--group", group, "--n", n, "--factors", "2", "--seed", "3",
            "-o", str(loop), "--factors-output", str(truth),
        )
        assert result.returncode == 0
        assert len(json.loads(truth.read_text())["factors"]) == 2

        checked = cli("check", str(loop))
        assert checked.returncode == 0
        assert json.loads(checked.stdout)["ok"] is True

        out = tmp_path / "result.json"
        factored = cli("factor", str(loop), "--trace", "-o", str(out))
        assert factored.returncode == 0
        doc = json.loads(out.read_text())
        assert doc["residual"] == "identity"
        assert "steps" in doc

        verified = cli("verify", str(loop), str(out))
        assert verified.returncode == 0
        assert json.loads(verified.stdout)["verified"] is True

    def test_random_is_deterministic(self, cli):
        first = cli("random", "--group", "so", "--n", "3", "--seed", "9")
        second = cli("random", "--group", "so", "--n", "3", "--seed", "9")
        assert first.returncode == 0
        assert first.stdout == second.stdout

    def test_identity_factors_to_nothing(self, cli, write_json):
        path = write_json("loop.json", identity_document(GroupContext.so(3)))
        result = cli("factor", path)
        assert result.returncode == 0
        assert json.loads(result.stdout)["factors"] == []

    def test_stdin(self, cli):
        doc = json.dumps(identity_document(GroupContext.so(2)))
        result = cli("check", "-", stdin=doc)
        assert result.returncode == 0

    def test_terminal_format(self, cli, write_json):
        path = write_json("loop.json", identity_document(GroupContext.so(3)))
        result = cli("check", path, "-f", "terminal")
        assert result.returncode == 0
        assert "Check report" in result.stdout

    def test_config_format(self, cli, write_json, tmp_path):
        (tmp_path / ".loop-factor.yaml").write_text("format: markdown\n")
        path = write_json("loop.json", identity_document(GroupContext.so(3)))
        result = cli("check", path)
        assert result.stdout.startswith("# Check report")


class TestCLIQueries:
    """Octonion and affine queries."""

    def test_octonion_product(self, cli):
        result = cli("octa", "product", "--i", "1", "--j", "2")
        assert result.returncode == 0
        assert json.loads(result.stdout) == {"i": 1, "j": 2, "sign": -1, "unit": 5}

    def test_g2_dimension(self, cli):
        result = cli("octa", "g2-dimension")
        assert json.loads(result.stdout) == {"relation_rank": 7, "dimension": 14}

    def test_classify(self, cli):
        result = cli("octa", "classify", "--vector", "1,0,0,0,0,0,0", "--vector", "0,1,0,0,0,0,0")
        doc = json.loads(result.stdout)
        assert doc == {"complex_coassociative": False, "associative_part": None}

    def test_eigenspaces(self, cli):
        result = cli("affine", "eigenspaces")
        assert json.loads(result.stdout) == {"basis": 21, "khat": 9, "phat": 12}

    def test_curvature(self, cli):
        result = cli("affine", "curvature", "--pqr", "p1=1", "p2=1", "--lam", "2")
        doc = json.loads(result.stdout)
        assert doc["in_phat"] is True
        assert doc["in_g2"] is True
        assert doc["vanishing"]["lam2"] is True
        assert "curvature_zero_at_lam" in doc
