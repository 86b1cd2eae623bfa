# src/skills/two_prop_skill.py

import dataclasses
import math

import numpy as np

from src.core.errors import InputValidationError
from src.priors import (
    TwoPropData,
    default_hyper,
    log_bf10_intrinsic_moment2,
    posterior_prob_m1_from_log,
    prior_correlation,
)
from src.studies import optimal_t_plus

from .base_skill import (
    BaseSkill, SkillMetadata, SkillCategory,
    SkillParameter, SkillInput, SkillOutput
)
from .bernoulli_skill import safe_exp


class TwoPropBfSkill(BaseSkill):
    """두 비율 동일성 검정의 베이즈 인자"""

    @property
    def metadata(self) -> SkillMetadata:
        return SkillMetadata(
            name="twoprop_bf",
            display_name="Two-proportion Bayes factor",
            description=(
                "Intrinsic moment prior Bayes factor for θ1 = θ2. Hyperparameters follow the "
                "default rule (b0 = 1/2, b_i and t_i proportional to n_i); t+ defaults to the "
                "TWOE optimum for the chosen h."
            ),
            category=SkillCategory.PRIOR,
            command="twoprop-bf",
            parameters=[
                SkillParameter(name="y1", type=int, description="occurrences in group 1"),
                SkillParameter(name="n1", type=int, description="size of group 1"),
                SkillParameter(name="y2", type=int, description="occurrences in group 2"),
                SkillParameter(name="n2", type=int, description="size of group 2"),
                SkillParameter(
                    name="h", type=int, description="moment order", required=False, default=0
                ),
                SkillParameter(
                    name="t_plus", type=int, description="total training sample size",
                    required=False,
                ),
                SkillParameter(
                    name="t1", type=int, description="explicit training size, group 1",
                    required=False,
                ),
                SkillParameter(
                    name="t2", type=int, description="explicit training size, group 2",
                    required=False,
                ),
                SkillParameter(
                    name="b0", type=float, description="Beta(b0, b0) prior under M0",
                    required=False, default=0.5,
                ),
                SkillParameter(
                    name="correlation_samples", type=int,
                    description="also estimate the prior correlation of (θ1, θ2) by Monte Carlo",
                    required=False,
                ),
            ],
            examples=[
                "imprior twoprop-bf --y1 0 --n1 1 --y2 1 --n2 1 --h 1",
                "imprior twoprop-bf --y1 7 --n1 20 --y2 3 --n2 20 --h 1 --t-plus 8",
            ],
            stochastic=True,
            produces=["log_bf10", "prob_m1", "prior_correlation"],
        )

    async def execute(self, input: SkillInput) -> SkillOutput:
        params = input.parameters
        data = TwoPropData(params["y1"], params["n1"], params["y2"], params["n2"])
        h, b0 = params["h"], params["b0"]

        explicit = [params.get("t1"), params.get("t2")]
        if any(v is not None for v in explicit):
            if None in explicit:
                raise InputValidationError("--t1 and --t2 must be given together")
            hyper = dataclasses.replace(
                default_hyper(data.n1, data.n2, h, 0, b0), t1=explicit[0], t2=explicit[1]
            )
        else:
            t_plus = params.get("t_plus")
            if t_plus is None:
                t_plus = optimal_t_plus(h, b0)
            hyper = default_hyper(data.n1, data.n2, h, t_plus, b0)
        input.parameters.update({"t1": hyper.t1, "t2": hyper.t2})

        log_bf = log_bf10_intrinsic_moment2(data, hyper)
        row = {
            **hyper.to_dict(),
            "log_bf10": log_bf,
            "bf10": safe_exp(log_bf),
            "prob_m1": posterior_prob_m1_from_log(log_bf),
            "log_prob_m1": float(-np.logaddexp(0.0, -log_bf)),
            "prob_m0": posterior_prob_m1_from_log(-log_bf),
        }

        mc_se = None
        samples = params.get("correlation_samples")
        if samples is not None:
            r = prior_correlation(hyper, samples, input.context.seed)
            row["prior_correlation"] = r
            mc_se = [{"prior_correlation": (1.0 - r * r) / math.sqrt(samples)}]

        return SkillOutput(success=True, data=self.envelope(input, [row], mc_se))
