"""예외 계층 정의

입력 오류(사용법 오류, CLI 종료 코드 2)와 계산 오류(종료 코드 1)를 구분합니다.
"""

from typing import Optional, Sequence


class ImpriorError(Exception):
    """모든 imprior 예외의 기본 클래스"""


class InputValidationError(ImpriorError, ValueError):
    """입력값/범위 검증 실패"""


class DataFormatError(InputValidationError):
    """데이터 파일 파싱 오류"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        record_id: Optional[str] = None,
    ):
        self.line = line
        self.record_id = record_id
        location = []
        if line is not None:
            location.append(f"line {line}")
        if record_id is not None:
            location.append(f"record '{record_id}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class ComputationError(ImpriorError):
    """수치 계산 실패"""


class CancellationError(ComputationError):
    """교대 합에서 허용치 이상의 자릿수 손실"""

    def __init__(self, message: str, relative_error: float):
        self.relative_error = relative_error
        super().__init__(f"{message} (estimated relative error {relative_error:.3g})")


class McmcTuningError(ComputationError):
    """적응 라운드 내에 목표 채택률 구간에 도달하지 못함"""

    def __init__(self, message: str, acceptance_rate: float, rounds: int):
        self.acceptance_rate = acceptance_rate
        self.rounds = rounds
        super().__init__(
            f"{message}: acceptance {acceptance_rate:.3f} after {rounds} adaptation round(s)"
        )


class DegenerateAnchorError(ComputationError):
    """Chib-Jeliazkov 기준점의 밀도가 유한하지 않음"""


class InsufficientChainError(ComputationError):
    """몬테카를로 평균이 0으로 소멸 (체인 길이 부족)"""

    def __init__(self, message: str, failed_terms: Sequence[tuple[int, ...]] = ()):
        self.failed_terms = list(failed_terms)
        detail = ""
        if self.failed_terms:
            shown = ", ".join(str(x) for x in self.failed_terms[:10])
            more = "" if len(self.failed_terms) <= 10 else f" (+{len(self.failed_terms) - 10} more)"
            detail = f"; failed x-terms: {shown}{more}"
        super().__init__(f"{message}{detail}")
