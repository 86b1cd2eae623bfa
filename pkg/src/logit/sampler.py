# src/logit/sampler.py
"""구형(spherical) 랜덤워크 Metropolis-Hastings 표본기

번인 동안 Robbins-Monro 방식으로 보폭(log step)을 조정하고, 번인 이후에는
보폭을 고정해 체인이 마르코프성을 유지하도록 합니다.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional

import numpy as np
import structlog
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from src.core.errors import ComputationError, InputValidationError, McmcTuningError
from src.core.numeric import RngStream

logger = structlog.get_logger(__name__)

LogDensity = Callable[[np.ndarray], float]


@dataclass
class McmcConfig:
    """MCMC 설정

    chain_length 는 솎아낸(thinning) 뒤 남기는 표본 수이며, 전체 반복 수는
    burn_in + chain_length * thin 입니다.
    """

    chain_length: int = 40000
    thin: int = 20
    burn_in: int = 5000
    target_acceptance: tuple[float, float] = (0.24, 0.28)
    seed: RngStream = field(default_factory=lambda: RngStream(0))

    # 적응 라운드
    max_tuning_rounds: int = 8
    check_length: int = 2000

    # Chib-Jeliazkov 분모용 제안 표본 수 (None 이면 chain_length)
    proposal_draws: Optional[int] = None

    def __post_init__(self):
        if self.thin < 1:
            raise InputValidationError(f"thin must be >= 1, got {self.thin}")
        if self.chain_length <= self.burn_in:
            raise InputValidationError(
                f"chain_length ({self.chain_length}) must exceed burn_in ({self.burn_in})"
            )
        if self.burn_in < 1:
            raise InputValidationError("burn_in must be positive for step-size adaptation")
        low, high = self.target_acceptance
        if not 0.0 < low < high < 1.0:
            raise InputValidationError(f"invalid acceptance window {self.target_acceptance!r}")
        self.target_acceptance = (float(low), float(high))

    @property
    def target_mid(self) -> float:
        low, high = self.target_acceptance
        return 0.5 * (low + high)

    @property
    def n_proposal_draws(self) -> int:
        return self.proposal_draws or self.chain_length

    def with_seed(self, seed: RngStream) -> "McmcConfig":
        return replace(self, seed=seed)

    def cache_key(self) -> tuple:
        return (
            self.chain_length, self.thin, self.burn_in, self.target_acceptance,
            self.seed.seed, self.seed.stream_id, self.max_tuning_rounds,
            self.check_length, self.n_proposal_draws,
        )

    def describe(self) -> Dict[str, Any]:
        return {
            "chain_length": self.chain_length,
            "thin": self.thin,
            "burn_in": self.burn_in,
            "target_acceptance": list(self.target_acceptance),
            "seed": self.seed.describe(),
        }

    @classmethod
    def smoke(cls, seed: Optional[RngStream] = None) -> "McmcConfig":
        """빠른 확인용 짧은 설정"""
        return cls(chain_length=4000, burn_in=2000, seed=seed or RngStream(0))

    @classmethod
    def from_dict(cls, config: Dict) -> "McmcConfig":
        """딕셔너리에서 설정 생성"""
        return cls(**{k: v for k, v in config.items() if hasattr(cls, k)})


@dataclass
class McmcResult:
    """솎아낸 사후 번인 표본과 진단값"""
    draws: np.ndarray
    acceptance_rate: float
    step_size: float
    tuning_rounds: int
    log_density: np.ndarray


class _AcceptanceOutOfWindow(Exception):
    def __init__(self, rate: float):
        self.rate = rate
        super().__init__(f"acceptance {rate:.3f} outside target window")


class _Chain:
    """보폭을 상태로 들고 다니는 단일 체인"""

    def __init__(self, target: LogDensity, state: np.ndarray, generator: np.random.Generator):
        self.target = target
        self.state = state
        self.log_p = target(state)
        if not math.isfinite(self.log_p):
            raise ComputationError("target log density is not finite at the initial state")
        self.generator = generator
        self.log_step = math.log(2.38 / math.sqrt(state.size))

    def advance(self, steps: int, adapt_target: Optional[float] = None, offset: int = 0) -> int:
        """steps 만큼 진행하고 채택 횟수를 반환 (adapt_target 이 있으면 보폭 조정)"""
        increments = self.generator.standard_normal((steps, self.state.size))
        uniforms = np.log(self.generator.random(steps))
        accepted = 0
        for i in range(steps):
            proposal = self.state + math.exp(self.log_step) * increments[i]
            log_q = self.target(proposal)
            ok = log_q - self.log_p >= uniforms[i]
            if ok:
                self.state, self.log_p = proposal, log_q
                accepted += 1
            if adapt_target is not None:
                gain = 1.0 / (offset + i + 1) ** 0.6
                self.log_step += gain * ((1.0 if ok else 0.0) - adapt_target)
        return accepted

    def record(self, count: int, thin: int) -> tuple[np.ndarray, np.ndarray, int]:
        draws = np.empty((count, self.state.size))
        log_density = np.empty(count)
        accepted = 0
        for g in range(count):
            accepted += self.advance(thin)
            draws[g] = self.state
            log_density[g] = self.log_p
        return draws, log_density, accepted


def mh_sample(
    target_log_density: LogDensity,
    dim: int,
    config: McmcConfig,
    initial: Optional[np.ndarray] = None,
) -> McmcResult:
    """랜덤워크 MH 로 target 에서 표본 추출

    한 라운드는 번인 적응, check_length 길이의 점검 구간, 본 체인 기록으로 이루어집니다.
    점검 구간이나 기록된 체인 전체의 채택률이 목표 구간을 벗어나면 보폭을 고쳐 라운드를
    다시 돌리고, max_tuning_rounds 회 안에 들어오지 못하면 McmcTuningError 를 냅니다.
    """
    if dim < 1:
        raise InputValidationError(f"dim must be >= 1, got {dim}")
    state = np.zeros(dim) if initial is None else np.asarray(initial, dtype=float).copy()
    chain = _Chain(target_log_density, state, config.seed.generator())
    low, high = config.target_acceptance
    adapted = {"iterations": 0, "rounds": 0}

    def tuning_round() -> McmcResult:
        adapted["rounds"] += 1
        chain.advance(config.burn_in, config.target_mid, offset=adapted["iterations"])
        adapted["iterations"] += config.burn_in
        rate = chain.advance(config.check_length) / config.check_length
        if not low <= rate <= high:
            logger.debug("acceptance outside window", rate=rate, round=adapted["rounds"])
            raise _AcceptanceOutOfWindow(rate)

        draws, log_density, accepted = chain.record(config.chain_length, config.thin)
        acceptance = accepted / (config.chain_length * config.thin)
        if not low <= acceptance <= high:
            logger.debug(
                "recorded chain acceptance outside window",
                acceptance=acceptance,
                round=adapted["rounds"],
                dim=dim,
            )
            # 채택률은 보폭에 대해 감소하므로 목표 중앙과의 상대 차이만큼 log 보폭을 옮김
            chain.log_step += (acceptance - config.target_mid) / config.target_mid
            raise _AcceptanceOutOfWindow(acceptance)

        return McmcResult(
            draws=draws,
            acceptance_rate=acceptance,
            step_size=math.exp(chain.log_step),
            tuning_rounds=adapted["rounds"],
            log_density=log_density,
        )

    try:
        for attempt in Retrying(
            stop=stop_after_attempt(config.max_tuning_rounds),
            retry=retry_if_exception_type(_AcceptanceOutOfWindow),
            reraise=False,
        ):
            with attempt:
                result = tuning_round()
    except RetryError as e:
        rate = e.last_attempt.exception().rate
        raise McmcTuningError(
            "random-walk step size did not reach the target acceptance window",
            acceptance_rate=rate,
            rounds=adapted["rounds"],
        ) from e
    return result
