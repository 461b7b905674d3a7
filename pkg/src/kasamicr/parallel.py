"""Worker-count policy shared by every enumeration loop."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

_threads: int | None = None


def get_threads() -> int:
    if _threads is not None:
        return _threads
    env = os.environ.get("KASAMI_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def set_threads(n: int | None) -> None:
    """Cap worker parallelism; ``None`` restores the env/CPU default."""
    global _threads
    _threads = None if n is None else max(1, int(n))


def pmap(fn, items):
    """Ordered map over ``items`` using up to ``get_threads()`` threads.

    numpy kernels release the GIL, so threads give real speedup here.
    """
    items = list(items)
    workers = min(get_threads(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
