"""Ordered fan-out over a thread pool."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Apply fn to every item, results in input order.

    With workers <= 1 this runs inline; otherwise items are spread over a
    thread pool and the results are still merged in input order, so callers
    stay deterministic.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug(f"Fanning out {len(items)} tasks over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
