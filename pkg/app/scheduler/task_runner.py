import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from ..config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class TaskRunner:
    """Worker pool whose results come back in submission order"""

    def __init__(self, threads: Optional[int] = None):
        requested = settings.threads if threads is None else threads
        self.threads = requested if requested and requested > 0 else (os.cpu_count() or 1)

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        if self.threads == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        logger.debug(f"Dispatching {len(items)} tasks on {self.threads} threads")
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            return list(executor.map(fn, items))
