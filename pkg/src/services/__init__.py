"""서비스 모듈 (복제 실험 작업자 풀, 데이터셋 로더)"""

from .replication_runner import gather_ordered, resolve_workers, run_replications
from .dataset_loader import (
    builtin_survival_data,
    builtin_trials_sample,
    datasets_dir,
    load_logit_problem,
    load_trial_tables,
    resolve_dataset,
)

__all__ = [
    # 작업자 풀
    "gather_ordered",
    "resolve_workers",
    "run_replications",
    # 데이터셋
    "load_trial_tables",
    "load_logit_problem",
    "builtin_survival_data",
    "builtin_trials_sample",
    "datasets_dir",
    "resolve_dataset",
]
