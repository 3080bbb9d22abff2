"""Optional process-level parallelism, capped by ``SGCM_THREADS``.

The default is serial evaluation; results are always returned in input
order, so reports do not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get("SGCM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"SGCM_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"SGCM_THREADS must be a positive integer, got {raw!r}")
    return n


def pmap(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """``list(map(fn, items))``, spread over worker processes when allowed."""
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
