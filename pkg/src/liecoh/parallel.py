"""Optional per-degree thread parallelism.

Everything in the library is pure and immutable after construction, so
independent degrees may be computed concurrently.  Output order is always
the input order, so results do not depend on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count(explicit=None) -> int:
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("KOSZUL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def parallel_map(fn, items, threads=None):
    items = list(items)
    threads = thread_count(threads)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
