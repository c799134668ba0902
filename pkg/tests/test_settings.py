import pytest

from trc_utils import TrcConfig, default_config
from trc_utils.settings import SEED_ENV_VAR, seed_from_env


class TestConfig:
    def test_defaults(self):
        config = default_config()
        assert config == TrcConfig()
        assert config.selection == "weight"
        assert config.parikh_method == "multi-final"
        assert config.literal_precedence is None

    def test_overrides(self):
        config = default_config(max_clauses=10, literal_precedence=["c", "b", "a"])
        assert config.max_clauses == 10
        assert config.literal_precedence == ("c", "b", "a")

    def test_unknown_field(self):
        with pytest.raises(AttributeError):
            default_config(max_vertices=10)

    @pytest.mark.parametrize("overrides", [{"selection": "random"}, {"parikh_method": "exact"}])
    def test_invalid_values(self, overrides):
        with pytest.raises(ValueError):
            default_config(**overrides)


class TestSeedFromEnv:
    def test_default(self, monkeypatch):
        monkeypatch.delenv(SEED_ENV_VAR, raising=False)
        assert seed_from_env() == TrcConfig.seed
        assert seed_from_env(3) == 3

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "42")
        assert seed_from_env(3) == 42

    def test_not_an_integer(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "seven")
        with pytest.raises(ValueError):
            seed_from_env()
