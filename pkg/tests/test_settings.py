"""
Tests for settings precedence and the config file.
"""

import pytest

from fnlie.settings import Settings, load_settings, read_config, write_config


@pytest.fixture
def config_file(tmp_path):
    return tmp_path / ".fnlie" / "config"


def test_defaults(config_file):
    assert load_settings(config_file, environ={}) == Settings()


def test_file_then_environment(config_file):
    write_config("trials", "7", config_file)
    write_config("seed", "3", config_file)
    settings = load_settings(config_file, environ={"FNLIE_SEED": "11", "OTHER": "1"})
    assert settings.trials == 7
    assert settings.seed == 11


def test_write_keeps_other_entries(config_file):
    write_config("format", "json", config_file)
    write_config("dim", "3", config_file)
    write_config("format", "text", config_file)
    assert read_config(config_file) == {"format": "text", "dim": "3"}


def test_comments_and_unknown_keys_are_ignored(config_file):
    config_file.parent.mkdir(parents=True)
    config_file.write_text("# defaults\njobs = 2\ncolour=blue\n", encoding="utf-8")
    settings = load_settings(config_file, environ={})
    assert settings.jobs == 2


@pytest.mark.parametrize("key, value", [("trials", "many"), ("format", "yaml"), ("jobs", "0")])
def test_bad_values_are_rejected(config_file, key, value):
    with pytest.raises(ValueError):
        write_config(key, value, config_file)
    assert not config_file.exists()


def test_unknown_key(config_file):
    with pytest.raises(KeyError):
        write_config("colour", "blue", config_file)


def test_bad_environment_value(config_file):
    with pytest.raises(ValueError, match="FNLIE|integer"):
        load_settings(config_file, environ={"FNLIE_DIM": "two"})
