from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .config import config

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None
) -> List[R]:
    """
    Applies a pure function to every item, capped by SMEMSYNTH_THREADS.

    Args:
        func (Callable[[T], R]): The function to apply.
        items (Iterable[T]): The inputs.
        threads (Optional[int]): Override for the worker cap.

    Returns:
        List[R]: Results in input order.
    """
    items = list(items)
    workers = min(threads or config.THREADS, max(1, len(items)))
    if workers <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
