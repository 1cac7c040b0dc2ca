"""
Deterministic data-parallel helper.

Work is described by a total item count. The index space [0, total) is cut into
contiguous ranges, each range is handed to a module-level task function
(task(start, stop, *args)), and the partial results come back in range order so
the caller's reduction does not depend on the worker count.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor

from src.config import get_settings

logger = logging.getLogger(__name__)

# Below this many items a process pool costs more than it saves.
MIN_ITEMS_PER_WORKER = 2048


def resolve_workers(workers=None):
    if workers is None:
        workers = get_settings().workers
    return max(1, min(int(workers), os.cpu_count() or 1))


def split_ranges(total, parts):
    """
    Cut [0, total) into at most `parts` contiguous, non-empty ranges.

    :return: list of (start, stop) tuples covering the interval in order.
    """
    parts = max(1, min(parts, total)) if total else 1
    base, extra = divmod(total, parts)
    ranges = []
    start = 0
    for index in range(parts):
        stop = start + base + (1 if index < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges


def run_partitioned(task, total, args=(), workers=None):
    """
    Evaluate task over [0, total) split across workers.

    :param task: callable - Module-level function task(start, stop, *args).
    :param total: int - Size of the index space.
    :param args: tuple - Extra picklable arguments for every range.
    :param workers: int - Worker count (None for the configured default).
    :return: list - One partial result per range, in range order.
    """
    workers = resolve_workers(workers)
    parts = min(workers, max(1, total // MIN_ITEMS_PER_WORKER))
    ranges = split_ranges(total, parts)
    if len(ranges) <= 1:
        return [task(start, stop, *args) for start, stop in ranges] or [
            task(0, 0, *args)
        ]
    logger.info(f"Splitting {total} items into {len(ranges)} ranges across {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(task, start, stop, *args) for start, stop in ranges]
        return [future.result() for future in futures]
