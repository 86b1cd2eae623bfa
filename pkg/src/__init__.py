"""imprior - 내재적 모멘트 사전분포에 의한 베이즈 검정과 모형 선택

주요 기능:
- 단일 비율, 두 비율 검정의 베이즈 인자 (정확한 교대 합 + 구적법 보정)
- 로지스틱 회귀 변수 선택 (MCMC, Chib-Jeliazkov 정규화 상수)
- 훈련표본 크기 선택(TWOE), 증거 곡선, 학습 속도 시뮬레이션
- 하위 명령 기반의 명령행 인터페이스
"""

__version__ = "0.1.0"

# Priors
from .priors import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    TwoPropData,
    TwoPropHyper,
    bf10_intrinsic_moment,
    bf10_intrinsic_moment2,
)

# Logistic regression
from .logit import (
    LogitProblem,
    McmcConfig,
    ModelId,
    posterior_model_probs,
)

# Studies
from .studies import (
    twoe_bernoulli,
    twoe_two_props,
)

__all__ = [
    # Version
    "__version__",
    # Priors
    "BernoulliNull",
    "BinData",
    "MomentPriorSpec",
    "TwoPropData",
    "TwoPropHyper",
    "bf10_intrinsic_moment",
    "bf10_intrinsic_moment2",
    # Logistic regression
    "LogitProblem",
    "McmcConfig",
    "ModelId",
    "posterior_model_probs",
    # Studies
    "twoe_bernoulli",
    "twoe_two_props",
]
