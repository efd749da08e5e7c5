"""Order-preserving process-pool map with an environment-controlled size."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from .errors import ParameterError

WORKERS_ENV = "NHSSH_WORKERS"


def worker_count(requested: int | None = None) -> int:
    """Explicit request, else ``$NHSSH_WORKERS``, else the CPU count."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterError(WORKERS_ENV, f"expected an integer, got {env!r}") from None
    return os.cpu_count() or 1


def ordered_map(fn: Callable, tasks: Iterable, workers: int | None = None) -> list:
    """``[fn(t) for t in tasks]``, computed in parallel when more than one worker is allowed."""
    tasks = list(tasks)
    n = min(worker_count(workers), len(tasks))
    if n <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, tasks))
