# src/skills/study_skill.py

import asyncio
from typing import Any, Dict, List

import numpy as np

from src.core.errors import InputValidationError
from src.priors import BernoulliNull, MomentPriorSpec, TwoPropHyper
from src.services.dataset_loader import builtin_trials_sample, load_trial_tables, resolve_dataset
from src.studies import (
    cross_validation_study,
    learning_rate_sim,
    sensitivity_analysis,
    twoe_bernoulli,
    twoe_two_props,
)

from .base_skill import (
    BaseSkill, SkillMetadata, SkillCategory,
    SkillParameter, SkillInput, SkillOutput
)

DEFAULT_N_GRID = [50, 100, 250, 500, 1000, 2500, 5000, 10000]


def _load_tables(params: Dict[str, Any]):
    path = params.get("file")
    records = load_trial_tables(resolve_dataset(path)) if path else builtin_trials_sample()
    if not records:
        return [], []
    return [r.to_data() for r in records], [r.id for r in records]


class TwoeSkill(BaseSkill):
    """최소 자료 TWOE 로 훈련표본 크기 선택"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="twoe",
            display_name="Training size by total weight of evidence",
            description="TWOE curve on minimal data and the selected training size t*.",
            category=SkillCategory.STUDY,
            command="twoe",
            parameters=[
                SkillParameter(
                    name="family", type=str, description="bernoulli or two_props",
                    required=False, default="bernoulli", choices=["bernoulli", "two_props"],
                ),
                SkillParameter(
                    name="b", type=float,
                    description="b (bernoulli, default 1) or b0 (two_props, default 1/2)",
                    required=False,
                ),
                SkillParameter(
                    name="h", type=int, description="moment order", required=False, default=1
                ),
                SkillParameter(
                    name="t_max", type=int, description="largest t (even for two_props)",
                    required=False, default=60,
                ),
            ],
            examples=[
                "imprior twoe --family bernoulli --b 1 --h 1",
                "imprior twoe --family two_props --h 2",
            ],
            produces=["t_star", "twoe"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        if params["family"] == "bernoulli":
            params.setdefault("b", 1.0)
            curve = twoe_bernoulli(b=params["b"], h=params["h"], t_max=params["t_max"])
        else:
            params.setdefault("b", 0.5)
            curve = twoe_two_props(b0=params["b"], h=params["h"], t_plus_max=params["t_max"])
        rows = curve.to_rows()
        summary = {"t_star": curve.t_star, "argmax_set": curve.argmax_set}
        output = SkillOutput(success=True, data=self.envelope(input, rows, summary=summary))
        output.metadata = summary
        return output


class LearningRateSkill(BaseSkill):
    """베이즈 인자 학습 속도 시뮬레이션"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="learning_rate",
            display_name="Learning rate simulation",
            description=(
                "Median log Bayes factor over replications for increasing n, with the fitted "
                "slope against log n (null truth) or n (alternative truth)."
            ),
            category=SkillCategory.STUDY,
            command="learning-rate",
            parameters=[
                SkillParameter(
                    name="family", type=str, description="bernoulli or two_props",
                    required=False, default="bernoulli", choices=["bernoulli", "two_props"],
                ),
                SkillParameter(
                    name="theta", type=float, multiple=True,
                    description="true θ (bernoulli) or θ1 θ2 (two_props)",
                ),
                SkillParameter(
                    name="theta0", type=float, description="null value (bernoulli)",
                    required=False, default=0.25,
                ),
                SkillParameter(
                    name="b", type=float, description="b (bernoulli) or b0 (two_props)",
                    required=False,
                ),
                SkillParameter(
                    name="h", type=int, description="moment order", required=False, default=0
                ),
                SkillParameter(
                    name="t", type=int, description="t (bernoulli) or t+ (two_props, even)",
                    required=False, default=0,
                ),
                SkillParameter(
                    name="n_grid", type=int, multiple=True, description="sample sizes",
                    required=False, default=DEFAULT_N_GRID,
                ),
                SkillParameter(
                    name="replications", type=int, description="replications per n",
                    required=False, default=1000,
                ),
            ],
            examples=[
                "imprior learning-rate --theta 0.25 --theta0 0.25 --h 1 --t 8 --seed 7",
                "imprior learning-rate --family two_props --theta 0.25 0.4 --h 1 --t 8 "
                "--n-grid 25 50 100 250 500",
            ],
            stochastic=True,
            produces=["median_log_bf", "slope"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        family = params["family"]
        if family == "bernoulli":
            params.setdefault("b", 1.0)
            spec: Any = MomentPriorSpec(b=params["b"], h=params["h"], t=params["t"])
            null = BernoulliNull(params["theta0"])
        else:
            params.setdefault("b", 0.5)
            if params["t"] % 2:
                raise InputValidationError("two_props learning rate needs an even --t")
            b0 = params["b"]
            spec = TwoPropHyper(
                b0=b0, b1=b0 / 2, b2=b0 / 2, h=params["h"],
                t1=params["t"] // 2, t2=params["t"] // 2,
            )
            null = None

        result = await asyncio.to_thread(
            learning_rate_sim,
            family,
            params["theta"],
            spec,
            params["n_grid"],
            params["replications"],
            input.context.seed,
            null,
            input.context.max_workers,
        )

        rows: List[Dict[str, Any]] = result.to_rows()
        for row in rows:
            row.update({f"fit_{key}": value for key, value in result.fit.to_dict().items()})
        mc_se = [
            {"mean_log_bf": float(np.std(samples, ddof=1) / np.sqrt(samples.size))}
            if samples.size > 1 else {"mean_log_bf": None}
            for samples in result.log_bf_samples
        ]
        summary = {"fit": result.fit.to_dict()}
        output = SkillOutput(
            success=True, data=self.envelope(input, rows, mc_se, summary=summary)
        )
        output.metadata = summary
        return output


class SensitivitySkill(BaseSkill):
    """임상시험 표 모음의 P(M0|y) 민감도 분석"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="sensitivity",
            display_name="Sensitivity analysis",
            description=(
                "Posterior probability of θ1 = θ2 for each trial table while t+ ranges from "
                "t+*(h) to t+*(h+1); tables sorted by |y1/n1 - y2/n2|."
            ),
            category=SkillCategory.STUDY,
            command="sensitivity",
            parameters=[
                SkillParameter(
                    name="file", type=str, required=False,
                    description="CSV with header id,y1,n1,y2,n2 (default: bundled sample)",
                ),
                SkillParameter(
                    name="h", type=int, multiple=True, description="moment orders",
                    required=False, default=[0, 1],
                ),
            ],
            examples=["imprior sensitivity --file trials.csv --h 0 1 --format csv"],
            produces=["prob_m0"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        tables, ids = _load_tables(input.parameters)
        if not tables:
            return SkillOutput(success=True, data=self.envelope(input, []))
        rows = await asyncio.to_thread(
            sensitivity_analysis, tables, input.parameters["h"], None, ids
        )
        return SkillOutput(success=True, data=self.envelope(input, [r.to_dict() for r in rows]))


class CrossvalSkill(BaseSkill):
    """leave-one-out 로그 점수 비교"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="crossval",
            display_name="Cross-validation study",
            description=(
                "Leave-one-out logarithmic scores S_h of model-averaged forecasts for each "
                "trial table, the differences S_h - S_0 and their medians in percent."
            ),
            category=SkillCategory.STUDY,
            command="crossval",
            parameters=[
                SkillParameter(
                    name="file", type=str, required=False,
                    description="CSV with header id,y1,n1,y2,n2 (default: bundled sample)",
                ),
                SkillParameter(
                    name="h", type=int, multiple=True, description="moment orders (with 0)",
                    required=False, default=[0, 1, 2],
                ),
            ],
            examples=["imprior crossval --file ulcer.csv"],
            produces=["score", "median_delta_percent"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        tables, ids = _load_tables(input.parameters)
        if not tables:
            return SkillOutput(success=True, data=self.envelope(input, []))
        scores, medians = await asyncio.to_thread(
            cross_validation_study, tables, ids, input.parameters["h"]
        )
        rows = [score.to_dict() for score in scores]
        rows.append({
            "table_id": "median",
            **{f"median_delta{h}_percent": value for h, value in medians.items()},
        })
        summary = {"median_delta_percent": medians}
        output = SkillOutput(success=True, data=self.envelope(input, rows, summary=summary))
        output.metadata = summary
        return output
