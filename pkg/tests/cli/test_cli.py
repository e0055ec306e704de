# type: ignore

import csv
import io
import json
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from bettilab.catalog import catalog_entries
from bettilab.cli.cli import cli


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture(autouse=True)
def settings_path(tmp_path):
    with patch("bettilab.models.settings.SessionConfig.get_path") as mock_get_path:
        mock_get_path.return_value = tmp_path / "settings.json"
        yield mock_get_path.return_value


@pytest.fixture
def cubic_file(tmp_path, twisted_cubic):
    path = tmp_path / "cubic.json"
    path.write_text(twisted_cubic.dumps(), encoding="utf-8")
    return path


@pytest.fixture
def quartic_file(tmp_path, rational_quartic):
    path = tmp_path / "quartic.json"
    path.write_text(rational_quartic.dumps(), encoding="utf-8")
    return path


class TestCatalog:
    def test_csv(self, runner):
        result = runner.invoke(cli, ["--format", "csv", "catalog"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "name,constructor,n,d,e,g,case"
        assert "twisted-cubic,rational-normal-curve,1,3,2,0,reg-1-family" in lines
        assert len(lines) == len(catalog_entries()) + 1

    def test_json(self, runner):
        result = runner.invoke(cli, ["--format", "json", "catalog"])
        assert result.exit_code == 0
        entries = json.loads(result.stdout)
        assert [entry["name"] for entry in entries] == [entry.name for entry in catalog_entries()]

    @pytest.mark.parametrize("name", ["ls", "cat"])
    def test_aliases(self, runner, name):
        result = runner.invoke(cli, ["--format", "csv", name])
        assert result.exit_code == 0
        assert result.stdout.startswith("name,constructor")

    def test_unknown_command(self, runner):
        result = runner.invoke(cli, ["frobnicate"])
        assert result.exit_code == 1


class TestBuild:
    def test_scroll(self, runner):
        result = runner.invoke(cli, ["build", "scroll", "--a", "1,2"])
        assert result.exit_code == 0
        model = json.loads(result.stdout)
        assert model["name"] == "scroll"
        assert model["params"] == {"a": [1, 2]}
        assert "(n, d, e, g) = (2, 3, 2, 0)" in result.stderr

    def test_catalog_entry_to_file(self, runner, tmp_path):
        output = tmp_path / "cubic.json"
        result = runner.invoke(cli, ["build", "twisted-cubic", "-o", str(output)])
        assert result.exit_code == 0
        assert result.stdout == ""
        assert json.loads(output.read_text())["params"] == {"a": 3}

    @pytest.mark.parametrize(
        "args",
        [["scroll", "--a", "0,1"], ["scroll", "--a", "x"], ["k3-surface"], ["rational-normal-curve", "--d", "3"]],
    )
    def test_invalid(self, runner, args):
        result = runner.invoke(cli, ["build", *args])
        assert result.exit_code == 1
        assert "Error" in result.stderr


class TestProject:
    def test_deterministic(self, runner, quartic_file, projected_quartic):
        first = runner.invoke(cli, ["project", str(quartic_file), "--t", "1", "--seed", "1"])
        second = runner.invoke(cli, ["--seed", "1", "project", str(quartic_file), "--t", "1"])
        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout == projected_quartic.dumps()
        assert "projecting" in first.stderr

    def test_codimension(self, runner, quartic_file):
        result = runner.invoke(cli, ["project", str(quartic_file), "--t", "0"])
        assert result.exit_code == 1

    def test_predict(self, runner, quartic_file):
        result = runner.invoke(cli, ["--format", "csv", "project", str(quartic_file), "--t", "1", "--predict"])
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.stdout)))
        assert rows
        assert all(row["predicted"] in ("zero", "nonzero") or row["rule"] == "" for row in rows)

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["project", str(tmp_path / "missing.json"), "--t", "1"])
        assert result.exit_code == 1


class TestBetti:
    def test_grid(self, runner, cubic_file):
        result = runner.invoke(cli, ["--field", "q", "betti", str(cubic_file)])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("rational-normal-curve(a=3)  [section, B=zero, dim V=4, field=q")
        assert lines[1:] == ["   0 1 2 3", "0: 1 . . .", "1: . 3 2 .", "2: . . . .", "3: . . . ."]

    def test_json_over_prime_field(self, runner, cubic_file):
        result = runner.invoke(cli, ["--format", "json", "--qmax", "2", "b", str(cubic_file)])
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["field"] == "q"
        assert {"p": 2, "q": 1, "dim": 2} in document["cells"]
        assert "seed chain" in result.stderr
        assert "seed chain" not in result.stdout

    def test_coordinate_ring(self, runner, cubic_file):
        args = ["--format", "csv", "--pmax", "2", "betti", str(cubic_file), "--module", "coordinate"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0
        assert "rational-normal-curve(a=3),zero,coordinate,q,1,1,3" in result.stdout.splitlines()

    def test_canonical_twist_needs_a_curve(self, runner, cubic_file):
        result = runner.invoke(cli, ["betti", str(cubic_file), "--twist", "canonical"])
        assert result.exit_code == 1


class TestVerify:
    def test_pass(self, runner, cubic_file):
        result = runner.invoke(cli, ["verify", str(cubic_file), "--theorem", "minimal-degree"])
        assert result.exit_code == 0

    def test_hypothesis_not_met(self, runner, cubic_file):
        result = runner.invoke(cli, ["--format", "json", "v", str(cubic_file), "--theorem", "thm12ln", "--k", "3"])
        assert result.exit_code == 2
        assert json.loads(result.stdout)["status"] == "hypothesis-not-met"

    def test_missing_k(self, runner, cubic_file):
        result = runner.invoke(cli, ["verify", str(cubic_file), "--theorem", "thm12ln"])
        assert result.exit_code == 1

    def test_unknown_theorem(self, runner, cubic_file):
        result = runner.invoke(cli, ["verify", str(cubic_file), "--theorem", "riemann"])
        assert result.exit_code == 1


class TestReport:
    def test_most_severe_status(self, runner, cubic_file, tmp_path):
        output = tmp_path / "summary.csv"
        args = ["report", str(cubic_file), "--theorem", "minimal-degree", "--theorem", "duality", "-o", str(output)]
        result = runner.invoke(cli, args)
        assert result.exit_code == 2
        rows = list(csv.DictReader(io.StringIO(output.read_text())))
        assert [row["status"] for row in rows] == ["pass", "hypothesis-not-met"]


class TestSettings:
    def test_show_overrides(self, runner):
        result = runner.invoke(cli, ["--seed", "7", "settings", "show"])
        assert result.exit_code == 0
        assert '"seed": 7' in result.stderr

    def test_show_file(self, runner, settings_path):
        settings_path.write_text('{"q_max": 2}')
        result = runner.invoke(cli, ["settings", "show"])
        assert result.exit_code == 0
        assert '"q_max": 2' in result.stderr

    def test_invalid_file(self, runner, settings_path):
        settings_path.write_text('{"q_max": 20}')
        result = runner.invoke(cli, ["settings", "show"])
        assert result.exit_code == 1
