"""공용 테스트 픽스처"""

import pytest
import structlog

from src.config import reload_settings
from src.core.numeric import RngStream
from src.logit import McmcConfig
from src.services.dataset_loader import builtin_survival_data


@pytest.fixture(autouse=True)
def reset_logging():
    """테스트마다 structlog 기본 설정으로 복구"""
    structlog.reset_defaults()
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng() -> RngStream:
    return RngStream(12345)


@pytest.fixture
def survival():
    """내장 생존 자료 (문제, 후보 모형 5 개)"""
    return builtin_survival_data()


@pytest.fixture
def quick_config() -> McmcConfig:
    """짧은 체인 (구조 확인용)"""
    return McmcConfig(chain_length=3000, thin=4, burn_in=2000, seed=RngStream(7))


@pytest.fixture
def clean_settings(monkeypatch):
    """IMPRIOR_* 환경 변수를 지운 설정, 테스트 후 원상 복구"""
    for name in ("IMPRIOR_THREADS", "IMPRIOR_SEED", "IMPRIOR_LOG_LEVEL", "IMPRIOR_LOG_JSON",
                 "IMPRIOR_DATASETS_DIR"):
        monkeypatch.delenv(name, raising=False)
    yield reload_settings()
    monkeypatch.undo()
    reload_settings()
