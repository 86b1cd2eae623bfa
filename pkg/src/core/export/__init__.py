"""결과 내보내기 모듈 (JSON, CSV)

- build_envelope: 결과 레코드를 ResultEnvelope 로 정리 (확률은 소수 6 자리)
- render: JSON 또는 CSV 문자열로 변환
"""

from .result_exporter import (
    PROBABILITY_DIGITS,
    OutputFormat,
    build_envelope,
    normalize_rows,
    normalize_value,
    render,
    to_csv,
)

__all__ = [
    "PROBABILITY_DIGITS",
    "OutputFormat",
    "build_envelope",
    "normalize_rows",
    "normalize_value",
    "render",
    "to_csv",
]
