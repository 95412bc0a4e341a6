"""
Logging filters routing and capping training-progress records.
"""
import logging
import time
from typing import Dict, Tuple

from .formatters import PROGRESS_FIELDS


class LevelRangeFilter(logging.Filter):
    """Pass records whose level lies in ``[min_level, max_level]``."""

    def __init__(self, min_level=logging.DEBUG, max_level=logging.CRITICAL):
        super().__init__()
        self.min_level = min_level
        self.max_level = max_level

    def filter(self, record):
        return self.min_level <= record.levelno <= self.max_level


class TrainingEventFilter(logging.Filter):
    """
    Pass only training-progress records.

    A record qualifies when it comes from a learner or harness logger, or
    carries one of the progress fields through ``extra=``.
    """

    LOGGER_PREFIXES = ('detector.learners', 'detector.harness')

    def __init__(self, prefixes=None):
        super().__init__()
        self.prefixes = tuple(prefixes) if prefixes else self.LOGGER_PREFIXES

    def filter(self, record):
        if record.name.startswith(self.prefixes):
            return True
        return any(hasattr(record, field) for field in PROGRESS_FIELDS)


class ThrottleFilter(logging.Filter):
    """
    Cap progress records per logger and progress field.

    Per-episode and per-round messages differ in their text, so records are
    grouped by ``(logger, progress field)`` instead. At most ``rate_limit``
    records of a group pass per ``time_window`` seconds; the last one passed
    is marked as throttled. Records without progress fields and records at
    WARNING or above always pass.
    """

    def __init__(self, rate_limit=10, time_window=60, clock=time.monotonic):
        super().__init__()
        self.rate_limit = rate_limit
        self.time_window = time_window
        self.clock = clock
        self._windows: Dict[Tuple[str, str], Tuple[float, int]] = {}

    def filter(self, record):
        if record.levelno >= logging.WARNING:
            return True
        field = next((name for name in PROGRESS_FIELDS if hasattr(record, name)), None)
        if field is None:
            return True

        key = (record.name, field)
        now = self.clock()
        started, count = self._windows.get(key, (now, 0))
        if now - started > self.time_window:
            started, count = now, 0
        count += 1
        self._windows[key] = (started, count)

        if count < self.rate_limit:
            return True
        if count == self.rate_limit:
            record.msg = f"{record.getMessage()} (further {field} records muted for {self.time_window}s)"
            record.args = ()
            return True
        return False
