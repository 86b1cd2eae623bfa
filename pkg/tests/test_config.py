"""설정 테스트"""

import pytest
from pydantic import ValidationError

from src.config import LogLevel, Settings, get_project_root, get_settings, reload_settings


def test_defaults(clean_settings):
    settings = clean_settings
    assert settings.threads is None
    assert settings.seed == 0
    assert settings.log_level is LogLevel.WARNING
    assert settings.worker_count() >= 1
    assert settings.get_datasets_dir() == get_project_root() / "datasets"


def test_environment_overrides(clean_settings, monkeypatch, tmp_path):
    monkeypatch.setenv("IMPRIOR_THREADS", "3")
    monkeypatch.setenv("IMPRIOR_SEED", "99")
    monkeypatch.setenv("IMPRIOR_LOG_LEVEL", "debug")
    monkeypatch.setenv("IMPRIOR_DATASETS_DIR", str(tmp_path))
    settings = reload_settings()
    assert settings.worker_count() == 3
    assert settings.seed == 99
    assert settings.log_level is LogLevel.DEBUG
    assert settings.get_datasets_dir() == tmp_path
    assert get_settings() is settings


def test_invalid_thread_count(clean_settings, monkeypatch):
    monkeypatch.setenv("IMPRIOR_THREADS", "0")
    with pytest.raises(ValidationError):
        Settings()
