"""애플리케이션 설정 관리"""

import os
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogLevel(str, Enum):
    """로그 레벨 열거형"""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class Settings(BaseSettings):
    """애플리케이션 설정"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # 병렬 작업자 수 상한 (없으면 CPU 수)
    threads: Optional[int] = Field(default=None, alias="IMPRIOR_THREADS", ge=1)

    # 기본 난수 시드 (--seed 가 없을 때)
    seed: int = Field(default=0, alias="IMPRIOR_SEED", ge=0, lt=2**64)

    # 로깅
    log_level: LogLevel = Field(default=LogLevel.WARNING, alias="IMPRIOR_LOG_LEVEL")
    log_json: bool = Field(default=False, alias="IMPRIOR_LOG_JSON")

    # 자료 디렉토리
    datasets_dir: Optional[Path] = Field(default=None, alias="IMPRIOR_DATASETS_DIR")

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper_level(cls, value):
        return value.upper() if isinstance(value, str) else value

    def worker_count(self) -> int:
        """복제 실험에 쓸 작업자 수"""
        return self.threads or os.cpu_count() or 1

    def get_datasets_dir(self) -> Path:
        """자료 디렉토리 경로 반환"""
        return self.datasets_dir or get_project_root() / "datasets"


def get_project_root() -> Path:
    """저장소 루트 경로 반환"""
    return Path(__file__).resolve().parent.parent


# 전역 설정 인스턴스
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """설정 인스턴스 반환 (싱글톤)"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """설정 다시 로드"""
    global _settings
    _settings = Settings()
    return _settings
