"""Tests for the command-line interface."""

import json

import pytest
from click.testing import CliRunner

from src.main import cli

HEADER = "T,k_r,k_b,k_g,S_A_nats,S_A_ln2,S_topo_nats,S_topo_ln2,I_AB_nats"


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "1.0.0" in result.output


class TestValidate:
    def test_valid_lattices(self, runner):
        for spec in ("torus:3x3", "triangular:2"):
            assert runner.invoke(cli, ["validate", "--lattice", spec]).exit_code == 0

    def test_invalid_lattice_is_usage_error(self, runner):
        assert runner.invoke(cli, ["validate", "--lattice", "torus:4x4"]).exit_code == 2
        assert runner.invoke(cli, ["validate", "--lattice", "klein:3"]).exit_code == 2


class TestSweep:
    ARGS = ["sweep", "-l", "torus:9x9", "-r", "levinwen:2,1", "--temps", "0.02:0.1:0.02"]

    def test_writes_csv(self, runner, tmp_path):
        out = tmp_path / "sweep.csv"
        result = runner.invoke(cli, [*self.ARGS, "-o", str(out)])
        assert result.exit_code == 0, result.output
        lines = out.read_text().split("\n")
        assert lines[0] == HEADER
        assert len(lines) == 7
        cells = lines[1].split(",")
        assert float(cells[7]) == pytest.approx(4.0, abs=1e-5)
        assert cells[8] == ""

    def test_deterministic(self, runner, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        runner.invoke(cli, [*self.ARGS, "-o", str(first)])
        runner.invoke(cli, [*self.ARGS, "-o", str(second)])
        assert first.read_bytes() == second.read_bytes()

    def test_json(self, runner, tmp_path):
        out = tmp_path / "sweep.json"
        result = runner.invoke(cli, [*self.ARGS, "--format", "json", "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert len(json.loads(out.read_text())) == 5

    @pytest.mark.parametrize("extra", [
        ["--temps", "1:0:0.1"],
        ["--lambda-x", "1,2"],
        ["--hard-x", "q"],
    ])
    def test_usage_errors(self, runner, extra):
        args = ["sweep", "-l", "torus:3x3", "-r", "hexagon:0", *extra]
        assert runner.invoke(cli, args).exit_code == 2

    def test_region_too_large(self, runner):
        result = runner.invoke(cli, ["sweep", "-l", "torus:3x3", "-r", "levinwen:2,1", "--temps", "1:1:1"])
        assert result.exit_code == 2

    def test_mutual(self, runner, tmp_path):
        out = tmp_path / "mutual.csv"
        result = runner.invoke(cli, ["mutual", "-l", "torus:3x3", "-r", "hexagon:0", "--temps", "0:0:1", "-o", str(out)])
        assert result.exit_code == 0, result.output
        row = out.read_text().split("\n")[1].split(",")
        assert row[8] == "2.77258872224"


class TestKSigmaSweep:
    def test_rows_carry_ksigma(self, runner, tmp_path):
        out = tmp_path / "ksigma.csv"
        args = ["sweep", "-l", "torus:9x9", "-r", "levinwen:2,1", "--ksigma", "0:2:1", "-o", str(out)]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        lines = out.read_text().split("\n")
        assert lines[0] == HEADER + ",KSigma"
        assert [line.split(",")[-1] for line in lines[1:4]] == ["0", "1", "2"]
        assert float(lines[1].split(",")[7]) == pytest.approx(4.0)

    @pytest.mark.parametrize("region", ["hexagon:0", "bogus:zz"])
    def test_non_levinwen_region_is_usage_error(self, runner, region):
        result = runner.invoke(cli, ["sweep", "-l", "torus:3x3", "-r", region, "--ksigma", "0:1:1"])
        assert result.exit_code == 2


class TestOtherCommands:
    def test_dump_lattice(self, runner, tmp_path):
        out = tmp_path / "lattice.json"
        result = runner.invoke(cli, ["dump-lattice", "-l", "triangular:1", "-o", str(out)])
        assert result.exit_code == 0
        data = json.loads(out.read_text())
        assert data["n_qubits"] == 7

    def test_verify(self, runner):
        result = runner.invoke(cli, ["verify", "-l", "torus:3x3", "--grid", "2", "--no-cache"])
        assert result.exit_code == 0, result.output

    def test_verify_guard_is_usage_error(self, runner):
        result = runner.invoke(cli, ["verify", "-l", "torus:6x6", "--grid", "2", "--no-cache"])
        assert result.exit_code == 2
