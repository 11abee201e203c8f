# -*- coding: utf-8 -*-
"""Process pool mapping with deterministic result order."""

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: Optional[int]) -> int:
    """``None`` or ``0`` means one worker per logical CPU."""
    if not jobs or jobs < 0:
        return os.cpu_count() or 1
    return jobs


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    jobs: Optional[int] = 1,
    desc: Optional[str] = None,
) -> List[R]:
    """Apply ``func`` to every item, in worker processes when ``jobs > 1``.

    Results come back in input order whatever the scheduling. ``func`` must be
    a picklable module-level callable when more than one job is used.
    """
    items = list(items)
    jobs = min(resolve_jobs(jobs), max(len(items), 1))
    progress = desc is not None and len(items) > 1
    if jobs == 1:
        iterator = tqdm(items, desc=desc, leave=False) if progress else items
        return [func(item) for item in iterator]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs)))
        if progress:
            results = tqdm(results, total=len(items), desc=desc, leave=False)
        return list(results)
