import pytest

from app.cli import parse_args
from app.config import DEFAULT_WINDOW, get_settings

ENV_KEYS = (
    "HOMLIE_DEFAULT_WINDOW",
    "HOMLIE_LOG_LEVEL",
    "HOMLIE_OUTPUT_FORMAT",
    "HOMLIE_HYPOTHESIS_PROFILE",
)


@pytest.fixture()
def clean_env(monkeypatch):
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    settings = get_settings()
    assert settings.default_window == DEFAULT_WINDOW
    assert settings.log_level == "WARNING"
    assert settings.output_format == "text"
    assert settings.hypothesis_profile == "default"


def test_values_are_normalized(clean_env):
    clean_env.setenv("HOMLIE_DEFAULT_WINDOW", " 4 ")
    clean_env.setenv("HOMLIE_LOG_LEVEL", "debug")
    clean_env.setenv("HOMLIE_OUTPUT_FORMAT", "JSON")
    settings = get_settings()
    assert settings.default_window == 4
    assert settings.log_level == "DEBUG"
    assert settings.output_format == "json"


def test_settings_are_cached(clean_env):
    assert get_settings() is get_settings()


@pytest.mark.parametrize(
    ("key", "value"),
    [
        ("HOMLIE_DEFAULT_WINDOW", "six"),
        ("HOMLIE_DEFAULT_WINDOW", "0"),
        ("HOMLIE_LOG_LEVEL", "LOUD"),
        ("HOMLIE_OUTPUT_FORMAT", "yaml"),
    ],
)
def test_invalid_values(clean_env, key, value):
    clean_env.setenv(key, value)
    with pytest.raises(RuntimeError, match=key):
        get_settings()


def test_cli_window_default_comes_from_env(clean_env):
    clean_env.setenv("HOMLIE_DEFAULT_WINDOW", "2")
    args = parse_args(["check", "skew"])
    assert args.window == 2
