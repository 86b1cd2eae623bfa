"""데이터셋 로더 모듈

임상시험 표 CSV, 로지스틱 회귀 문제 JSON, 내장 생존 자료를 읽어옵니다.
"""

import csv
import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

import structlog
from pydantic import ValidationError

from src.config import get_settings
from src.core.errors import DataFormatError, InputValidationError
from src.core.records import LogitProblemSpec, TrialTableRecord
from src.logit import LogitProblem, ModelId

logger = structlog.get_logger(__name__)

TRIAL_HEADER = ["id", "y1", "n1", "y2", "n2"]
SURVIVAL_FILE = "survival.json"
TRIALS_SAMPLE_FILE = "trials_sample.csv"
_BUNDLED_DIR = Path(__file__).resolve().parents[2] / "datasets"

PathLike = Union[str, Path]


def datasets_dir() -> Path:
    """자료 디렉토리 (IMPRIOR_DATASETS_DIR 이 있으면 그 경로)"""
    return get_settings().get_datasets_dir()


def _first_error(error: ValidationError) -> str:
    detail = error.errors()[0]
    where = ".".join(str(part) for part in detail.get("loc", ()))
    message = detail.get("msg", str(error))
    return f"{where}: {message}" if where else message


def load_trial_tables(path: PathLike) -> List[TrialTableRecord]:
    """헤더 id,y1,n1,y2,n2 인 CSV 에서 임상시험 표를 파일 순서대로 읽음

    Args:
        path: CSV 파일 경로

    Returns:
        검증된 레코드 목록 (자료 행이 없으면 빈 목록)
    """
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"trial table file not found: {path}")

    records: List[TrialTableRecord] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [col.strip() for col in header] != TRIAL_HEADER:
            raise DataFormatError(f"expected header {','.join(TRIAL_HEADER)}", line=1)

        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(TRIAL_HEADER):
                raise DataFormatError(
                    f"expected {len(TRIAL_HEADER)} fields, got {len(row)}", line=line
                )
            record_id = row[0].strip()
            try:
                counts = [int(cell.strip()) for cell in row[1:]]
            except ValueError as e:
                raise DataFormatError(f"counts must be integers ({e})", line=line) from e
            try:
                record = TrialTableRecord(
                    id=record_id, **dict(zip(TRIAL_HEADER[1:], counts))
                )
            except ValidationError as e:
                raise DataFormatError(_first_error(e), line=line, record_id=record_id) from e
            if record.id in seen:
                raise DataFormatError("duplicate table id", line=line, record_id=record.id)
            seen.add(record.id)
            records.append(record)

    if not records:
        logger.warning("trial table file has no data rows", path=str(path))
    return records


def load_logit_problem(path: PathLike) -> Tuple[LogitProblem, List[ModelId]]:
    """로지스틱 회귀 문제 JSON {n, y, Z, models, w_plus} 읽기"""
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"logit problem file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DataFormatError(f"invalid JSON ({e.msg})", line=e.lineno) from e
    try:
        spec = LogitProblemSpec.model_validate(payload)
    except ValidationError as e:
        raise DataFormatError(_first_error(e)) from e
    try:
        return spec.to_problem(), spec.to_models()
    except InputValidationError as e:
        raise DataFormatError(f"{path.name}: {e}") from e


def builtin_survival_data() -> Tuple[LogitProblem, List[ModelId]]:
    """내장 생존 자료 (4 개 공변량 패턴) 와 다섯 개 후보 모형"""
    return load_logit_problem(_BUNDLED_DIR / SURVIVAL_FILE)


def builtin_trials_sample() -> List[TrialTableRecord]:
    """내장 합성 임상시험 표 5 개"""
    return load_trial_tables(_BUNDLED_DIR / TRIALS_SAMPLE_FILE)


def resolve_dataset(name_or_path: PathLike, default_dir: Optional[Path] = None) -> Path:
    """경로가 없으면 자료 디렉토리 안에서 찾음"""
    path = Path(name_or_path)
    if path.exists():
        return path
    candidate = (default_dir or datasets_dir()) / path
    if candidate.exists():
        return candidate
    raise DataFormatError(f"dataset not found: {name_or_path}")
