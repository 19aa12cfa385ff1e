"""
Ordered thread-pool execution for per-image and per-sweep-point work.

Results always come back in submission order, whatever order the workers finish in;
a failing task yields an `Outcome` carrying its exception instead of stopping the batch.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
import os
from typing import Callable, Generic, Iterable, Optional, TypeVar

logger = logging.getLogger(__name__)

THREADS_ENV = "PCL_SRTOOL_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def thread_limit() -> int:
    """Worker count from PCL_SRTOOL_THREADS, defaulting to the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
        else:
            if value >= 1:
                return value
            logger.warning("Ignoring non-positive %s=%r", THREADS_ENV, raw)
    return os.cpu_count() or 1


@dataclass
class Outcome(Generic[R]):
    """Result of one task: either `value` or `error` is set."""

    key: str
    value: Optional[R] = None
    error: Optional[BaseException] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class TaskRunner:
    """Runs a function over keyed items with a bounded thread pool."""

    def __init__(self, threads: Optional[int] = None):
        """
        Initialize TaskRunner.

        Args:
            threads: Worker cap; None reads PCL_SRTOOL_THREADS
        """
        self.threads = threads or thread_limit()

    def map(self, fn: Callable[[T], R], items: Iterable[tuple[str, T]]) -> list[Outcome[R]]:
        """
        Apply `fn` to every item and return outcomes in input order.

        Args:
            fn: Work function taking the item payload
            items: (key, payload) pairs; the key labels failures
        """
        items = list(items)
        logger.debug("Running %d tasks on %d threads", len(items), self.threads)

        def guarded(key: str, payload: T) -> Outcome[R]:
            try:
                return Outcome(key, value=fn(payload))
            except Exception as exc:
                logger.error("Task %s failed: %s", key, exc)
                return Outcome(key, error=exc)

        if self.threads == 1 or len(items) <= 1:
            return [guarded(key, payload) for key, payload in items]

        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            futures = [pool.submit(guarded, key, payload) for key, payload in items]
            return [future.result() for future in futures]
