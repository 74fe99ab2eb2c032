"""Worker-count policy and order-preserving parallel map.

The PARTEIS_THREADS environment variable caps the worker count; 0 or unset
means automatic. Results always come back in input order, so float outputs
are bit-identical regardless of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("PARTEIS_THREADS", "0").strip()
    try:
        requested = int(raw)
    except ValueError:
        raise ValueError(f"PARTEIS_THREADS must be an integer, got {raw!r}") from None
    if requested < 0:
        raise ValueError("PARTEIS_THREADS must be nonnegative")
    if requested == 0:
        return min(os.cpu_count() or 1, 8)
    return requested


def map_ordered(fn, items):
    """Apply fn to each item, in parallel when allowed, preserving order."""
    items = list(items)
    workers = min(worker_count(), len(items)) if items else 1
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
