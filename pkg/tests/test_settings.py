import pytest

from schemabudget.config.settings import (
    DEFAULT_FORMATS,
    DEFAULT_WINDOWS,
    ClientKind,
    ExperimentConfig,
    load_experiment_config,
    settings,
)
from schemabudget.core.exceptions import ConfigError
from schemabudget.models.schema import SchemaFormat


def test_defaults():
    config = load_experiment_config()
    assert config.formats == list(DEFAULT_FORMATS)
    assert config.windows == list(DEFAULT_WINDOWS)
    assert config.client == ClientKind.ORACLE
    assert config.endpoint == settings.base_url


def test_budget_config_uses_fixed_reservations():
    budget = ExperimentConfig().budget_config(8192)
    assert budget.window == 8192
    assert budget.fixed_reservation == 350 + 1500 + 512


def test_file_values_and_overrides(tmp_path):
    path = tmp_path / "experiment.env"
    path.write_text(
        "# grid\nWINDOWS=8192, 32768\nFORMATS=json,tscg_balanced\nSEED=7\nEPSILON=0.05\n",
        encoding="utf-8",
    )
    config = load_experiment_config(str(path), {"seed": 11, "model": None})

    assert config.windows == [8192, 32768]
    assert config.formats == [SchemaFormat.JSON, SchemaFormat.TSCG_BALANCED]
    assert config.seed == 11
    assert config.epsilon == pytest.approx(0.05)
    assert config.model == settings.model


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_experiment_config(str(tmp_path / "absent.env"))


def test_unknown_file_key(tmp_path):
    path = tmp_path / "experiment.env"
    path.write_text("WINDOW=8192\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="unknown config key"):
        load_experiment_config(str(path))


@pytest.mark.parametrize(
    "overrides",
    [
        {"windows": "8192,-1"},
        {"windows": ""},
        {"formats": "yaml"},
        {"epsilon": 1.5},
        {"max_iters": 4},
        {"client": "carrier-pigeon"},
        {"temperature": 0.2},
    ],
)
def test_invalid_values(overrides):
    with pytest.raises(ConfigError):
        load_experiment_config(overrides=overrides)


def test_counter_profile():
    profile = ExperimentConfig(bytes_per_token=3.5, per_message_overhead=0).counter_profile()
    assert profile.bytes_per_token == 3.5
    assert profile.per_message_overhead == 0
