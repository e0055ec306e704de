import json
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from bettilab.enums import OutputFormat
from bettilab.exceptions import BettilabPathError, BettilabValueError
from bettilab.models.settings import SessionConfig
from bettilab.settings import load_session_function, write_settings


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("SEED", "FIELD", "FORMAT", "Q_MAX", "P_MAX"):
        monkeypatch.delenv(f"BETTILAB_{name}", raising=False)


class TestSessionConfig:
    def test_defaults(self):
        config = SessionConfig()
        assert config.field == "fp:32003"
        assert config.seed == 0
        assert config.format == OutputFormat.pretty
        assert config.q_max == 3
        assert config.window() == (-1, 4)
        assert config.ground_field.prime == 32003

    @pytest.mark.parametrize(
        "data",
        [{"field": "fp:10"}, {"field": "r"}, {"q_max": 9}, {"m_window": (3, 1)}, {"coefficient_bound": 0}, {"x": 1}],
    )
    def test_invalid(self, data):
        with pytest.raises(ValidationError):
            SessionConfig(**data)

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("BETTILAB_SEED", "7")
        assert SessionConfig().seed == 7

    def test_load_from(self, tmp_path):
        file = tmp_path / "settings.json"
        file.write_text('{"seed": 3, "field": "q"}')
        config = SessionConfig.load_from(file)
        assert config.seed == 3
        assert config.ground_field.is_rational

    def test_environment_wins_over_file(self, tmp_path, monkeypatch):
        file = tmp_path / "settings.json"
        file.write_text('{"seed": 3}')
        monkeypatch.setenv("BETTILAB_SEED", "9")
        assert SessionConfig.load_from(file).seed == 9

    def test_load_from_missing(self, tmp_path):
        with pytest.raises(BettilabPathError):
            SessionConfig.load_from(tmp_path / "missing.json")

    @pytest.mark.parametrize("content", ["{", '{"seed": -1}', '{"unknown": 1}', "[1, 2]"])
    def test_load_from_invalid(self, tmp_path, content):
        file = tmp_path / "settings.json"
        file.write_text(content)
        with pytest.raises(BettilabValueError):
            SessionConfig.load_from(file)


@patch("bettilab.models.settings.SessionConfig.get_path")
class TestSessionFunctions:
    def test_defaults_without_file(self, mock_get_path, tmp_path):
        mock_get_path.return_value = tmp_path / "settings.json"
        assert load_session_function() == SessionConfig()

    def test_overrides(self, mock_get_path, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text('{"seed": 3, "q_max": 2}')
        mock_get_path.return_value = path
        config = load_session_function({"seed": 5, "field": None, "format": "json"})
        assert config.seed == 5
        assert config.q_max == 2
        assert config.format == OutputFormat.json
        assert config.field == "fp:32003"

    def test_write_settings(self, mock_get_path, tmp_path):
        path = tmp_path / "bettilab" / "settings.json"
        mock_get_path.return_value = path
        write_settings(SessionConfig(seed=4))
        assert json.loads(path.read_text()) == {"seed": 4}
        assert load_session_function().seed == 4
