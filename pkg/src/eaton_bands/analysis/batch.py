"""독립 궤도 묶음의 병렬 실행."""
from __future__ import annotations

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from eaton_bands.models.geometry import Vec2
from eaton_bands.raytrace.engine import SceneConfig, Trajectory, trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitJob:
    config: SceneConfig
    start: Vec2
    dir: int
    t_max: float
    sample_dt: float = 1.0
    record_events: bool = False


Reducer = Callable[[Trajectory], Any]


def run_job(job: OrbitJob, reduce: Reducer | None = None) -> Any:
    traj = trace(job.config, job.start, job.dir, job.t_max, job.sample_dt, job.record_events)
    return reduce(traj) if reduce is not None else traj


async def run_orbits_async(jobs: Sequence[OrbitJob], workers: int = 1, reduce: Reducer | None = None) -> list[Any]:
    """모든 궤도를 실행하고 제출 순서대로 결과를 돌려준다.

    `reduce` 는 작업 프로세스 안에서 궤도를 요약하는 최상위 함수여야 한다 (pickle 가능).
    """
    if workers <= 1:
        return [run_job(job, reduce) for job in jobs]

    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        tasks = [loop.run_in_executor(pool, run_job, job, reduce) for job in jobs]
        results = await asyncio.gather(*tasks)
    logger.info("궤도 %d개 완료 (프로세스 %d개)", len(jobs), workers)
    return list(results)


def run_orbits(jobs: Sequence[OrbitJob], workers: int = 1, reduce: Reducer | None = None) -> list[Any]:
    return asyncio.run(run_orbits_async(jobs, workers, reduce))
