"""Thread cap shared by every parallel loop (``ORLICZ_LAB_THREADS``)."""

import os


def max_workers(n_tasks=None):
    raw = os.environ.get("ORLICZ_LAB_THREADS", "")
    try:
        cap = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        cap = 1
    cap = max(1, cap)
    return min(cap, n_tasks) if n_tasks else cap


def pmap(fn, items):
    """Ordered map over ``items`` on at most ``max_workers`` threads."""
    items = list(items)
    workers = max_workers(len(items))
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
