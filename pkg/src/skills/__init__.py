# src/skills/__init__.py
"""
imprior 명령 시스템

각 하위 명령(bern-bf, twoe, logit-select 등)은 하나의 스킬 클래스로 구현되며,
스킬 메타데이터에서 명령행 인터페이스가 만들어집니다.
"""

from .base_skill import (
    ErrorKind,
    SkillCategory,
    SkillParameter,
    SkillMetadata,
    SkillInput,
    SkillOutput,
    SkillContext,
    BaseSkill,
)

from .skill_registry import (
    SkillRegistry,
    register_default_skills,
)

from .bernoulli_skill import BernBfSkill, BernPriorSkill, EvidenceCurveSkill
from .two_prop_skill import TwoPropBfSkill
from .study_skill import CrossvalSkill, LearningRateSkill, SensitivitySkill, TwoeSkill
from .logit_skill import LogitSelectSkill, LogitTwoeSkill

__all__ = [
    # Base classes
    "ErrorKind",
    "SkillCategory",
    "SkillParameter",
    "SkillMetadata",
    "SkillInput",
    "SkillOutput",
    "SkillContext",
    "BaseSkill",
    # Registry
    "SkillRegistry",
    "register_default_skills",
    # Skills
    "BernBfSkill",
    "BernPriorSkill",
    "EvidenceCurveSkill",
    "TwoPropBfSkill",
    "TwoeSkill",
    "LearningRateSkill",
    "SensitivitySkill",
    "CrossvalSkill",
    "LogitSelectSkill",
    "LogitTwoeSkill",
]
