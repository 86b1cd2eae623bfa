# src/skills/base_skill.py

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Type

import structlog

from src.core.errors import ImpriorError, InputValidationError
from src.core.export import build_envelope
from src.core.numeric import RngStream
from src.core.records import ResultEnvelope
from src.logit import ChainCache, get_chain_cache

logger = structlog.get_logger(__name__)


class SkillCategory(Enum):
    """스킬 카테고리"""
    PRIOR = "prior"             # 사전분포와 베이즈 인자
    STUDY = "study"             # 증거 연구
    SELECTION = "selection"     # 모형 선택


class ErrorKind(str, Enum):
    """실패 유형 (CLI 종료 코드 결정)"""
    USAGE = "usage"
    COMPUTATION = "computation"


@dataclass
class SkillParameter:
    """스킬 파라미터 정의"""
    name: str
    type: Type
    description: str
    required: bool = True
    default: Any = None
    choices: Optional[List[Any]] = None
    multiple: bool = False      # 값 여러 개 (--grid 0 4 8)


@dataclass
class SkillMetadata:
    """스킬 메타데이터"""
    name: str                              # 스킬 이름 (예: "bern_bf")
    display_name: str                      # 표시 이름
    description: str                       # 설명
    category: SkillCategory                # 카테고리
    command: str                           # 하위 명령 (예: "bern-bf")
    parameters: List[SkillParameter]       # 파라미터 목록
    examples: List[str] = field(default_factory=list)  # 사용 예시
    stochastic: bool = False               # 난수 사용 여부 (시드 기록)
    produces: List[str] = field(default_factory=list)  # 생성하는 출력 타입


@dataclass
class SkillContext:
    """스킬 실행 컨텍스트"""
    seed: RngStream = field(default_factory=lambda: RngStream(0))
    chain_cache: ChainCache = field(default_factory=get_chain_cache)
    max_workers: Optional[int] = None


@dataclass
class SkillInput:
    """스킬 입력"""
    parameters: Dict[str, Any]
    context: SkillContext = field(default_factory=SkillContext)


@dataclass
class SkillOutput:
    """스킬 출력"""
    success: bool
    data: Optional[ResultEnvelope]
    error: Optional[str] = None
    error_kind: Optional[ErrorKind] = None
    metadata: Dict[str, Any] = field(default_factory=dict)


class BaseSkill(ABC):
    """스킬 기본 클래스"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}

    @property
    @abstractmethod
    def metadata(self) -> SkillMetadata:
        """스킬 메타데이터 반환"""

    @abstractmethod
    async def execute(self, input: SkillInput) -> SkillOutput:
        """스킬 실행"""

    def validate_input(self, input: SkillInput) -> Optional[str]:
        """입력 유효성 검사"""
        for param in self.metadata.parameters:
            if param.required and param.name not in input.parameters:
                return f"missing required parameter: {param.name}"

            if param.name in input.parameters:
                value = input.parameters[param.name]
                values = value if param.multiple else [value]
                if param.multiple and not isinstance(value, (list, tuple)):
                    return f"parameter {param.name} expects a list of {param.type.__name__}"

                for item in values:
                    # float 파라미터는 정수도 받음
                    accepted = (int, float) if param.type is float else param.type
                    if isinstance(item, bool) and param.type is not bool:
                        return f"parameter {param.name} must be {param.type.__name__}"
                    if not isinstance(item, accepted):
                        return f"parameter {param.name} must be {param.type.__name__}"
                    if param.choices and item not in param.choices:
                        return f"parameter {param.name} must be one of {param.choices}"

        return None

    def envelope(
        self,
        input: SkillInput,
        results: List[Dict[str, Any]],
        mc_se: Optional[List[Dict[str, Any]]] = None,
        summary: Optional[Dict[Any, Any]] = None,
    ) -> ResultEnvelope:
        """해석된 파라미터 전체와 (확률적이면) 시드, 요약값을 담은 결과 봉투"""
        seed = input.context.seed.describe() if self.metadata.stochastic else None
        return build_envelope(
            command=self.metadata.command,
            config=dict(sorted(input.parameters.items())),
            results=results,
            seed=seed,
            mc_se=mc_se,
            summary=summary,
        )

    async def run(self, input: SkillInput) -> SkillOutput:
        """스킬 실행 (유효성 검사 포함)"""
        error = self.validate_input(input)
        if error:
            return SkillOutput(success=False, data=None, error=error, error_kind=ErrorKind.USAGE)

        # 기본값 적용
        for param in self.metadata.parameters:
            if param.name not in input.parameters and param.default is not None:
                input.parameters[param.name] = param.default

        try:
            return await self.execute(input)
        except InputValidationError as e:
            return SkillOutput(success=False, data=None, error=str(e), error_kind=ErrorKind.USAGE)
        except ImpriorError as e:
            logger.error("computation failed", command=self.metadata.command, error=str(e))
            return SkillOutput(
                success=False, data=None, error=str(e), error_kind=ErrorKind.COMPUTATION
            )

    def get_help(self) -> str:
        """플래그 목록과 예시를 담은 일반 텍스트 도움말"""
        meta = self.metadata
        lines = [f"imprior {meta.command}: {meta.display_name}", "", meta.description, ""]
        for param in meta.parameters:
            flag = "--" + param.name.replace("_", "-")
            if param.multiple:
                flag += " ..."
            note = "required" if param.required else f"default {param.default}"
            lines.append(f"  {flag:<26} {param.description} ({note})")
        if meta.examples:
            lines += ["", "examples:", *(f"  {example}" for example in meta.examples)]
        return "\n".join(lines) + "\n"
