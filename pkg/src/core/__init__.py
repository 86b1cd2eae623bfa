"""핵심 모듈: 수치 커널과 오류 계층"""

from .errors import (
    CancellationError,
    ComputationError,
    DataFormatError,
    DegenerateAnchorError,
    ImpriorError,
    InputValidationError,
    InsufficientChainError,
    McmcTuningError,
)
from .numeric import (
    EPS,
    RngStream,
    SignedLogValue,
    largest_remainder,
    log_beta,
    log_beta_expectation,
    log_binom_coef,
    log_binom_pmf,
    log_gamma,
    log_integrate,
    signed_log_sum,
)

__all__ = [
    # 오류
    "ImpriorError",
    "InputValidationError",
    "DataFormatError",
    "ComputationError",
    "CancellationError",
    "McmcTuningError",
    "DegenerateAnchorError",
    "InsufficientChainError",
    # 수치 커널
    "EPS",
    "log_gamma",
    "log_beta",
    "log_binom_coef",
    "log_binom_pmf",
    "largest_remainder",
    "SignedLogValue",
    "signed_log_sum",
    "RngStream",
    "log_beta_expectation",
    "log_integrate",
]
