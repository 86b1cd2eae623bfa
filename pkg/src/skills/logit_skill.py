# src/skills/logit_skill.py

import asyncio
import dataclasses
from typing import Any, Dict, List

from src.core.errors import InputValidationError
from src.logit import McmcConfig, ModelId, posterior_model_probs
from src.services.dataset_loader import builtin_survival_data, load_logit_problem, resolve_dataset
from src.studies import twoe_logit

from .base_skill import (
    BaseSkill, SkillMetadata, SkillCategory,
    SkillParameter, SkillInput, SkillOutput
)


def _chain_parameters() -> List[SkillParameter]:
    return [
        SkillParameter(
            name="file", type=str, required=False,
            description="logit problem JSON {n, y, Z, models, w_plus} (default: survival data)",
        ),
        SkillParameter(
            name="chain_length", type=int, description="retained draws per chain",
            required=False,
        ),
        SkillParameter(name="thin", type=int, description="thinning factor", required=False),
        SkillParameter(name="burn_in", type=int, description="burn-in iterations", required=False),
        SkillParameter(
            name="smoke", type=bool, description="short chains for a quick check",
            required=False, default=False,
        ),
    ]


def _resolve(input: SkillInput):
    params = input.parameters
    path = params.get("file")
    problem, models = load_logit_problem(resolve_dataset(path)) if path else builtin_survival_data()

    seed = input.context.seed
    base = McmcConfig.smoke(seed) if params["smoke"] else McmcConfig(seed=seed)
    overrides = {
        key: params[key] for key in ("chain_length", "thin", "burn_in") if key in params
    }
    config = dataclasses.replace(base, **overrides)
    params.update({key: value for key, value in config.describe().items() if key != "seed"})
    return problem, models, config


class LogitSelectSkill(BaseSkill):
    """로지스틱 회귀 모형의 사후확률 (h, t+ 격자)"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="logit_select",
            display_name="Logistic regression model selection",
            description=(
                "Posterior probabilities of logistic regression models under intrinsic moment "
                "priors, one block of rows per (h, t+) pair; chains are shared across pairs."
            ),
            category=SkillCategory.SELECTION,
            command="logit-select",
            parameters=[
                *_chain_parameters(),
                SkillParameter(
                    name="h", type=int, multiple=True, description="moment orders",
                    required=False, default=[0, 1, 2],
                ),
                SkillParameter(
                    name="t_plus", type=int, multiple=True,
                    description="total training sizes paired with --h",
                    required=False, default=[0, 8, 16],
                ),
            ],
            examples=[
                "imprior logit-select --h 1 --t-plus 8 --seed 3",
                "imprior logit-select --file problem.json --h 0 0 --t-plus 0 4 --smoke",
            ],
            stochastic=True,
            produces=["probability", "log_marginal"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        if len(params["h"]) != len(params["t_plus"]):
            raise InputValidationError("--h and --t-plus need the same number of values")
        problem, models, config = _resolve(input)
        if not models:
            models = [ModelId(()), ModelId(tuple(range(1, problem.k + 1)))]

        rows: List[Dict[str, Any]] = []
        errors: List[Dict[str, Any]] = []
        for h, t_plus in zip(params["h"], params["t_plus"]):
            selection = await asyncio.to_thread(
                posterior_model_probs,
                problem, models, h, t_plus, config, input.context.chain_cache,
            )
            for entry in selection.models:
                rows.append({
                    "h": h,
                    "t_plus": t_plus,
                    "training": list(selection.training.t),
                    "model": entry.label,
                    "probability": entry.probability,
                    "log_probability": entry.log_probability,
                    "log_marginal": entry.log_marginal,
                })
                errors.append({
                    "log_marginal": entry.mc_se,
                    "probability": selection.probability_se[entry.label],
                })
        return SkillOutput(success=True, data=self.envelope(input, rows, errors))


class LogitTwoeSkill(BaseSkill):
    """최소 자료에서 완전 모형 대 절편 모형의 TWOE"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="logit_twoe",
            display_name="Logistic regression TWOE",
            description=(
                "Total weight of evidence of the full model against the intercept-only model "
                "over all minimal outcomes (n_i = 1); Monte Carlo noisy."
            ),
            category=SkillCategory.SELECTION,
            command="logit-twoe",
            parameters=[
                *_chain_parameters(),
                SkillParameter(
                    name="h", type=int, description="moment order", required=False, default=1
                ),
                SkillParameter(
                    name="t_plus", type=int, multiple=True, description="t+ grid",
                    required=False, default=[0, 4, 8, 12, 16, 20, 24],
                ),
            ],
            examples=["imprior logit-twoe --h 2 --t-plus 0 4 8 12 --smoke"],
            stochastic=True,
            produces=["twoe"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        problem, _, config = _resolve(input)
        curve = await asyncio.to_thread(
            twoe_logit,
            problem, params["h"], params["t_plus"], config, None, input.context.chain_cache,
        )
        rows = curve.to_rows()
        errors = [{"twoe": se} for se in curve.mc_se]
        summary = {"t_star": curve.t_star, "noisy": curve.noisy}
        output = SkillOutput(
            success=True, data=self.envelope(input, rows, errors, summary=summary)
        )
        output.metadata = summary
        return output
