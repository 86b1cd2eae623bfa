# src/skills/bernoulli_skill.py

import math
from typing import List, Sequence

import numpy as np

from src.core.errors import InputValidationError
from src.priors import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    log_bf10_intrinsic_moment,
    posterior_prob_m1_from_log,
    prior_table,
)
from src.studies import average_posterior_curve, evidence_curve

from .base_skill import (
    BaseSkill, SkillMetadata, SkillCategory,
    SkillParameter, SkillInput, SkillOutput
)


def pair_specs(b: float, hs: Sequence[int], ts: Sequence[int]) -> List[MomentPriorSpec]:
    """--h 와 --t 를 순서대로 짝지어 사전분포 목록 생성"""
    if len(hs) != len(ts):
        raise InputValidationError(f"--h and --t need the same number of values ({hs}, {ts})")
    return [MomentPriorSpec(b=b, h=h, t=t) for h, t in zip(hs, ts)]


def safe_exp(value: float) -> float:
    return math.exp(value) if value < 709.0 else math.inf


def _null_parameters() -> List[SkillParameter]:
    return [
        SkillParameter(
            name="theta0",
            type=float,
            description="귀무가설의 성공 확률 θ0",
            required=False,
            default=0.5,
        ),
        SkillParameter(
            name="b",
            type=float,
            description="기본 Beta(b, b) 사전분포의 모수",
            required=False,
            default=1.0,
        ),
    ]


class BernBfSkill(BaseSkill):
    """단일 비율 베이즈 인자"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="bern_bf",
            display_name="Bernoulli Bayes factor",
            description=(
                "Intrinsic moment prior Bayes factor BF10 for θ = θ0 "
                "from y successes in n trials."
            ),
            category=SkillCategory.PRIOR,
            command="bern-bf",
            parameters=[
                SkillParameter(name="y", type=int, description="number of successes"),
                SkillParameter(name="n", type=int, description="number of trials"),
                *_null_parameters(),
                SkillParameter(
                    name="h", type=int, description="moment order", required=False, default=0
                ),
                SkillParameter(
                    name="t", type=int, description="training sample size", required=False,
                    default=0,
                ),
            ],
            examples=["imprior bern-bf --y 3 --n 12 --theta0 0.25 --b 1 --h 1 --t 8"],
            produces=["log_bf10", "prob_m1"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        data = BinData(params["y"], params["n"])
        null = BernoulliNull(params["theta0"])
        spec = MomentPriorSpec(b=params["b"], h=params["h"], t=params["t"])

        log_bf = log_bf10_intrinsic_moment(data, null, spec)
        row = {
            "y": data.y,
            "n": data.n,
            "log_bf10": log_bf,
            "bf10": safe_exp(log_bf),
            "prob_m1": posterior_prob_m1_from_log(log_bf),
            "log_prob_m1": float(-np.logaddexp(0.0, -log_bf)),
            "prob_m0": posterior_prob_m1_from_log(-log_bf),
        }
        return SkillOutput(success=True, data=self.envelope(input, [row]))


class BernPriorSkill(BaseSkill):
    """사전밀도 표 (그래프용)"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="bern_prior",
            display_name="Bernoulli prior densities",
            description="Intrinsic moment prior densities on an equally spaced θ grid.",
            category=SkillCategory.PRIOR,
            command="bern-prior",
            parameters=[
                *_null_parameters(),
                SkillParameter(
                    name="h", type=int, description="moment orders", required=False,
                    default=[0, 1, 2], multiple=True,
                ),
                SkillParameter(
                    name="t", type=int, description="training sizes paired with --h",
                    required=False, default=[0, 8, 13], multiple=True,
                ),
                SkillParameter(
                    name="points", type=int, description="number of interior θ points",
                    required=False, default=99,
                ),
            ],
            examples=["imprior bern-prior --theta0 0.5 --h 0 1 --t 0 8 --format csv"],
            produces=["density"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        if params["points"] < 1:
            raise InputValidationError("--points must be positive")
        thetas = np.arange(1, params["points"] + 1) / (params["points"] + 1)
        specs = pair_specs(params["b"], params["h"], params["t"])
        rows = prior_table(thetas.tolist(), BernoulliNull(params["theta0"]), specs)
        return SkillOutput(success=True, data=self.envelope(input, rows))


class EvidenceCurveSkill(BaseSkill):
    """관측 빈도에 따른 P(M1|y) 곡선, 또는 표본 크기에 따른 평균 P(M0|y)"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="evidence_curve",
            display_name="Evidence curve",
            description=(
                "Posterior probability of M1 against the observed frequency (mode=curve) or the "
                "exact average posterior probability of M0 over sample sizes (mode=average)."
            ),
            category=SkillCategory.STUDY,
            command="evidence-curve",
            parameters=[
                SkillParameter(
                    name="mode", type=str, description="curve or average", required=False,
                    default="curve", choices=["curve", "average"],
                ),
                SkillParameter(
                    name="n", type=int, description="sample size (curve mode)", required=False,
                    default=12,
                ),
                *_null_parameters(),
                SkillParameter(
                    name="h", type=int, description="moment orders", required=False,
                    default=[0, 1], multiple=True,
                ),
                SkillParameter(
                    name="t", type=int, description="training sizes paired with --h",
                    required=False, default=[0, 8], multiple=True,
                ),
                SkillParameter(
                    name="theta", type=float, description="true θ (average mode)",
                    required=False,
                ),
                SkillParameter(
                    name="n_grid", type=int, description="sample sizes (average mode)",
                    required=False, default=[10, 25, 50, 100, 250, 500], multiple=True,
                ),
            ],
            examples=[
                "imprior evidence-curve --n 12 --theta0 0.25 --h 0 1 --t 0 8",
                "imprior evidence-curve --mode average --theta 0.25 --theta0 0.25",
            ],
            produces=["prob_m1", "mean_prob_m0"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        null = BernoulliNull(params["theta0"])
        specs = pair_specs(params["b"], params["h"], params["t"])
        if params["mode"] == "curve":
            rows = evidence_curve(params["n"], null, specs)
        else:
            theta = params.get("theta", null.theta0)
            rows = average_posterior_curve(params["n_grid"], theta, null, specs)
        return SkillOutput(success=True, data=self.envelope(input, rows))
