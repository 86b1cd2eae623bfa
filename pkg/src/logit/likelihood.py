# src/logit/likelihood.py
"""이항 로지스틱 회귀 - 문제 정의, 우도, 켤레 사전분포"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.core.errors import InputValidationError


@dataclass(frozen=True)
class ModelId:
    """포함된 설명변수 열 번호 (1-기반, 절편은 항상 포함; 빈 집합은 절편 모형)"""
    included: tuple[int, ...] = ()
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        included = tuple(sorted(set(int(j) for j in self.included)))
        if any(j < 1 for j in included):
            raise InputValidationError(f"column indices are 1-based, got {self.included!r}")
        object.__setattr__(self, "included", included)

    @property
    def is_null(self) -> bool:
        return not self.included

    @property
    def dim(self) -> int:
        """자유 모수 개수 (절편 포함)"""
        return len(self.included) + 1

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.is_null:
            return "intercept-only"
        return "+".join(str(j) for j in self.included)


@dataclass(frozen=True)
class ConjugateHyper:
    """켤레 사전분포의 가상 성공 수 u 와 가상 시행 수 w"""
    u: tuple[float, ...]
    w: tuple[float, ...]

    def __post_init__(self):
        u = tuple(float(v) for v in self.u)
        w = tuple(float(v) for v in self.w)
        if len(u) != len(w):
            raise InputValidationError("u and w must have the same length")
        if any(not 0.0 < ui < wi for ui, wi in zip(u, w)):
            raise InputValidationError("conjugate hyperparameters need 0 < u_i < w_i")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)

    @property
    def u_plus(self) -> float:
        return float(sum(self.u))

    @property
    def w_plus(self) -> float:
        return float(sum(self.w))

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.u), np.asarray(self.w)


@dataclass
class LogitProblem:
    """N 개 공변량 패턴의 이항 자료와 설계행렬 Z (N x k)"""
    n: np.ndarray
    y: np.ndarray
    design: np.ndarray
    w_plus: float = 1.0
    column_names: tuple[str, ...] = ()

    def __post_init__(self):
        self.n = np.asarray(self.n, dtype=np.int64)
        self.y = np.asarray(self.y, dtype=np.int64)
        self.design = np.atleast_2d(np.asarray(self.design, dtype=float))
        if self.design.size == 0:
            self.design = np.zeros((self.n.size, 0))

        if self.n.ndim != 1 or self.y.shape != self.n.shape:
            raise InputValidationError("n and y must be vectors of the same length")
        if self.design.shape[0] != self.n.size:
            raise InputValidationError(
                f"design has {self.design.shape[0]} rows, expected {self.n.size}"
            )
        if np.any(self.y < 0) or np.any(self.y > self.n):
            bad = int(np.argmax((self.y < 0) | (self.y > self.n)))
            raise InputValidationError(f"need 0 <= y_i <= n_i, violated at pattern {bad}")
        if not self.w_plus > 0.0:
            raise InputValidationError(f"w_plus must be positive, got {self.w_plus!r}")
        if self.column_names and len(self.column_names) != self.k:
            raise InputValidationError("column_names must name every design column")

    @property
    def N(self) -> int:
        return int(self.n.size)

    @property
    def k(self) -> int:
        return int(self.design.shape[1])

    def model_matrix(self, model: ModelId) -> np.ndarray:
        """절편 열과 선택된 열로 이루어진 N x (1+|model|) 행렬"""
        if any(j > self.k for j in model.included):
            raise InputValidationError(
                f"model {model.name} uses column beyond k={self.k}"
            )
        columns = [np.ones(self.N)] + [self.design[:, j - 1] for j in model.included]
        matrix = np.column_stack(columns)
        if np.linalg.matrix_rank(matrix) < matrix.shape[1]:
            raise InputValidationError(f"model {model.name} is not identified on this design")
        return matrix

    def model_label(self, model: ModelId) -> str:
        if model.label or model.is_null or not self.column_names:
            return model.name
        return "+".join(self.column_names[j - 1] for j in model.included)

    def with_counts(self, y: Sequence[int], n: Sequence[int]) -> "LogitProblem":
        return LogitProblem(
            n=np.asarray(n), y=np.asarray(y), design=self.design,
            w_plus=self.w_plus, column_names=self.column_names,
        )

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "LogitProblem":
        """JSON 문제 정의 {n, y, Z, w_plus, column_names} 에서 생성"""
        try:
            n = payload["n"]
            y = payload["y"]
            design = payload.get("Z", [[] for _ in n])
        except KeyError as e:
            raise InputValidationError(f"logit problem is missing field {e.args[0]!r}") from e
        return cls(
            n=np.asarray(n),
            y=np.asarray(y),
            design=np.asarray(design, dtype=float).reshape(len(n), -1),
            w_plus=float(payload.get("w_plus", 1.0)),
            column_names=tuple(payload.get("column_names", ())),
        )


def models_from_payload(payload: Dict[str, Any]) -> List[ModelId]:
    labels = payload.get("model_labels") or []
    models = []
    for index, columns in enumerate(payload.get("models", [])):
        label = labels[index] if index < len(labels) else None
        models.append(ModelId(tuple(columns), label=label))
    return models


def default_conjugate_hyper(problem: LogitProblem) -> ConjugateHyper:
    """w_i = w+ n_i / Σn, u_i = w_i / 2 (사전 최빈값이 β = 0)"""
    total = int(problem.n.sum())
    if total <= 0:
        raise InputValidationError("default conjugate hyperparameters need Σ n_i > 0")
    w = problem.w_plus * problem.n / total
    if np.any(w <= 0.0):
        raise InputValidationError("every covariate pattern needs n_i > 0")
    return ConjugateHyper(u=tuple(w / 2.0), w=tuple(w))


def log_likelihood(
    beta: np.ndarray, y: np.ndarray, n: np.ndarray, matrix: np.ndarray
) -> float:
    """Σ_i [y_i η_i - n_i log(1 + exp η_i)],  η = X β"""
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (matrix.shape[1],):
        raise InputValidationError(
            f"beta has shape {beta.shape}, expected ({matrix.shape[1]},)"
        )
    eta = matrix @ beta
    return float(np.sum(y * eta - n * np.logaddexp(0.0, eta)))


def log_likelihood_batch(
    betas: np.ndarray, y: np.ndarray, n: np.ndarray, matrix: np.ndarray
) -> np.ndarray:
    """여러 β (M x D) 에 대한 로그 우도 (M,)"""
    eta = np.asarray(betas) @ matrix.T
    return (eta * y - np.logaddexp(0.0, eta) * n).sum(axis=1)


def log_moment(betas: np.ndarray, h: int) -> np.ndarray:
    """Σ_{j≥1} 2h log|β_j| (절편 제외); 빈 곱이면 0"""
    betas = np.atleast_2d(betas)
    if h == 0 or betas.shape[1] == 1:
        return np.zeros(betas.shape[0])
    with np.errstate(divide="ignore"):
        return 2 * h * np.log(np.abs(betas[:, 1:])).sum(axis=1)
