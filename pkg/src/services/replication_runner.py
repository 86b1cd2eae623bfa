# src/services/replication_runner.py
"""복제 실험 작업자 풀

작업 항목을 스레드에서 실행하되 동시 실행 수를 세마포어로 제한하고,
결과는 제출 순서대로 모읍니다.
"""

import asyncio
from typing import Callable, List, Optional, Sequence, TypeVar

import structlog

from src.config import get_settings
from src.core.errors import InputValidationError

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(max_workers: Optional[int] = None) -> int:
    """작업자 수 (명시값 > IMPRIOR_THREADS > CPU 수)"""
    workers = max_workers or get_settings().worker_count()
    if workers < 1:
        raise InputValidationError(f"worker count must be at least 1, got {workers}")
    return workers


async def gather_ordered(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = None,
) -> List[R]:
    """func(item) 을 스레드에서 병렬 실행하고 입력 순서대로 반환"""
    workers = resolve_workers(max_workers)
    semaphore = asyncio.Semaphore(workers)

    async def bounded(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(func, item)

    logger.debug("replication batch started", items=len(items), workers=workers)
    results = await asyncio.gather(*(bounded(item) for item in items))
    return list(results)


def run_replications(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = None,
) -> List[R]:
    """gather_ordered 의 동기 진입점

    이미 이벤트 루프가 도는 스레드에서는 순차 실행합니다.
    """
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(gather_ordered(func, items, max_workers))
    logger.debug("event loop already running, replications run sequentially")
    return [func(item) for item in items]
