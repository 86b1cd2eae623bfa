"""입출력 데이터 모델"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.logit import LogitProblem, ModelId
from src.priors import TwoPropData


class TrialTableRecord(BaseModel):
    """임상시험 표 한 개: 처리군 y1/n1, 대조군 y2/n2"""
    id: str = Field(min_length=1)
    y1: int = Field(ge=0)
    n1: int = Field(ge=0)
    y2: int = Field(ge=0)
    n2: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_bounds(self) -> "TrialTableRecord":
        if self.y1 > self.n1:
            raise ValueError(f"y1={self.y1} exceeds n1={self.n1}")
        if self.y2 > self.n2:
            raise ValueError(f"y2={self.y2} exceeds n2={self.n2}")
        return self

    def to_data(self) -> TwoPropData:
        return TwoPropData(self.y1, self.n1, self.y2, self.n2)


class LogitProblemSpec(BaseModel):
    """로지스틱 회귀 문제 JSON"""
    model_config = ConfigDict(populate_by_name=True)

    n: list[int]
    y: list[int]
    design: list[list[float]] = Field(default_factory=list, alias="Z")
    models: list[list[int]] = Field(default_factory=list)
    model_labels: list[str] = Field(default_factory=list)
    column_names: list[str] = Field(default_factory=list)
    w_plus: float = Field(default=1.0, gt=0.0)

    def to_problem(self) -> LogitProblem:
        return LogitProblem.from_dict(self.model_dump(by_alias=True))

    def to_models(self) -> list[ModelId]:
        labels = self.model_labels
        return [
            ModelId(tuple(columns), label=labels[i] if i < len(labels) else None)
            for i, columns in enumerate(self.models)
        ]


class ResultEnvelope(BaseModel):
    """명령 실행 결과 {command, config, seed, results, mc_se, summary}

    summary 에는 결과 표 전체에서 나오는 요약값 (t*, 최댓값 집합, 회귀 적합 등) 이 들어갑니다.
    """
    command: str
    config: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[dict[str, int]] = None
    results: list[dict[str, Any]] = Field(default_factory=list)
    mc_se: Optional[list[dict[str, Any]]] = None
    summary: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _stochastic_needs_seed(self) -> "ResultEnvelope":
        if self.mc_se is not None and self.seed is None:
            raise ValueError("results with Monte Carlo errors must carry their seed")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ResultEnvelope":
        return cls.model_validate_json(text)
