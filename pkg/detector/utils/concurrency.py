"""
Job execution helper for independent work items (grid points, folds,
One-vs-All classes).
"""
import concurrent.futures
from typing import Callable, Iterable, List, TypeVar

T = TypeVar('T')
R = TypeVar('R')


def run_jobs(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """
    Apply ``fn`` to every item, concurrently when ``jobs > 1``.

    Results come back in submission order regardless of completion order, and
    the first exception raised by any job propagates.

    Args:
        fn: Function applied to each item
        items: Work items
        jobs: Maximum worker threads

    Returns:
        list: One result per item
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    with concurrent.futures.ThreadPoolExecutor(max_workers=min(jobs, len(items))) as executor:
        futures = [executor.submit(fn, item) for item in items]
        return [future.result() for future in futures]
