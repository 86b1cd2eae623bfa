"""결과 내보내기 모듈 (JSON, CSV)"""

import csv
import io
import math
from enum import Enum
from typing import Any, Dict, List

from src.core.records import ResultEnvelope

# 확률 값의 소수 자릿수
PROBABILITY_DIGITS = 6


class OutputFormat(str, Enum):
    """출력 형식"""
    JSON = "json"
    CSV = "csv"


def _is_probability_key(key: str) -> bool:
    return key.startswith("prob") or key == "probability"


def normalize_value(key: str, value: Any) -> Any:
    """numpy 스칼라를 파이썬 값으로 바꾸고 확률은 6 자리로 반올림"""
    if hasattr(value, "item") and not isinstance(value, (list, tuple, dict)):
        value = value.item()
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    if not math.isfinite(value):
        return None
    if _is_probability_key(key):
        return round(value, PROBABILITY_DIGITS)
    return value


def normalize_rows(rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return [{key: normalize_value(key, value) for key, value in row.items()} for row in rows]


def _normalize_summary(summary: Dict[Any, Any]) -> Dict[str, Any]:
    # 정수 키 (h 등) 는 JSON 객체 키로 쓰도록 문자열로
    normalized: Dict[str, Any] = {}
    for key, value in summary.items():
        key = str(key)
        if isinstance(value, dict):
            normalized[key] = _normalize_summary(value)
        else:
            normalized[key] = normalize_value(key, value)
    return normalized


def build_envelope(
    command: str,
    config: Dict[str, Any],
    results: List[Dict[str, Any]],
    seed: Dict[str, int] | None = None,
    mc_se: List[Dict[str, Any]] | None = None,
    summary: Dict[Any, Any] | None = None,
) -> ResultEnvelope:
    return ResultEnvelope(
        command=command,
        config={key: normalize_value(key, value) for key, value in config.items()},
        seed=seed,
        results=normalize_rows(results),
        mc_se=normalize_rows(mc_se) if mc_se is not None else None,
        summary=_normalize_summary(summary or {}),
    )


def to_csv(envelope: ResultEnvelope) -> str:
    """헤더 + 결과 레코드당 한 행 (mc_se 는 같은 행에 'mc_se_' 접두사로)"""
    rows = [dict(row) for row in envelope.results]
    if envelope.mc_se is not None and len(envelope.mc_se) == len(rows):
        for row, errors in zip(rows, envelope.mc_se):
            row.update({f"mc_se_{key}": value for key, value in errors.items()})

    header: List[str] = []
    for row in rows:
        header.extend(key for key in row if key not in header)

    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: "" if row.get(key) is None else row.get(key) for key in header})
    return buffer.getvalue()


def render(envelope: ResultEnvelope, output_format: OutputFormat | str) -> str:
    """지정한 형식의 문자열로 변환"""
    match OutputFormat(output_format):
        case OutputFormat.JSON:
            return envelope.to_json()
        case OutputFormat.CSV:
            return to_csv(envelope)
