"""
Logging formatters for the console, the rotating files and the training log.

Training code attaches progress fields through ``extra=`` (episode, epsilon,
round, fold, grid_point). The console and file formatters append them as a
``key=value`` suffix; the JSON formatter nests them under ``progress``.
"""
import logging
from datetime import datetime
from typing import Any, Dict

import orjson

PROGRESS_FIELDS = ('episode', 'epsilon', 'round', 'fold', 'grid_point')


def progress_fields(record: logging.LogRecord) -> Dict[str, Any]:
    """Progress fields present on ``record``, in ``PROGRESS_FIELDS`` order."""
    return {name: getattr(record, name) for name in PROGRESS_FIELDS if hasattr(record, name)}


def _render(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4g}"
    if isinstance(value, dict):
        return ','.join(f"{k}={_render(v)}" for k, v in sorted(value.items()))
    return str(value)


def progress_suffix(record: logging.LogRecord) -> str:
    fields = progress_fields(record)
    if not fields:
        return ''
    return ' (' + ' '.join(f"{name}={_render(value)}" for name, value in fields.items()) + ')'


class ColoredFormatter(logging.Formatter):
    """Console formatter: colored level name, progress suffix."""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
    }
    RESET = '\033[0m'

    def __init__(self, *args, use_color: bool = True, **kwargs):
        super().__init__(*args, **kwargs)
        self.use_color = use_color

    def format(self, record):
        levelname = record.levelname
        if self.use_color and levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.RESET}"
        try:
            return super().format(record) + progress_suffix(record)
        finally:
            record.levelname = levelname


class DetailedFormatter(logging.Formatter):
    """File formatter with source location and progress suffix."""

    def format(self, record):
        record.timestamp = datetime.fromtimestamp(record.created).isoformat(timespec='milliseconds')
        record.module_path = f"{record.module}.{record.funcName}"
        return super().format(record) + progress_suffix(record)


class JSONFormatter(logging.Formatter):
    """One JSON object per record, for ``training.log``."""

    def format(self, record):
        log_data = {
            'timestamp': datetime.fromtimestamp(record.created).isoformat(timespec='milliseconds'),
            'level': record.levelname,
            'logger': record.name,
            'location': f"{record.module}.{record.funcName}:{record.lineno}",
            'message': record.getMessage(),
        }
        progress = progress_fields(record)
        if progress:
            log_data['progress'] = progress
        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)

        return orjson.dumps(log_data, default=str, option=orjson.OPT_SERIALIZE_NUMPY).decode()
