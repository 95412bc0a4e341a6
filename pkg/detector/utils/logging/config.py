"""
Logging configuration module.
Centralized logging setup for the entire workbench.
"""
import logging
from pathlib import Path
from typing import Optional, Union

from .formatters import ColoredFormatter, DetailedFormatter, JSONFormatter
from .filters import LevelRangeFilter, TrainingEventFilter, ThrottleFilter


def get_log_level(level_name: str = 'INFO') -> int:
    """Map a level name to its numeric value, defaulting to INFO."""
    return getattr(logging, str(level_name).upper(), logging.INFO)


def _rotating_file(filename: Path, level: int, formatter: str, filters: list) -> dict:
    return {
        'class': 'logging.handlers.TimedRotatingFileHandler',
        'level': level,
        'formatter': formatter,
        'filters': filters,
        'filename': str(filename),
        'when': 'midnight',
        'interval': 1,
        'backupCount': 10,
        'encoding': 'utf-8',
        'delay': True,
    }


def get_logging_config(
    level_name: str = 'INFO',
    log_dir: Optional[Union[str, Path]] = None,
    debug_mode: bool = True,
) -> dict:
    """
    Get logging configuration dictionary.

    Console output is always configured. Rotating files (main, error,
    training) are added only when ``log_dir`` is given.

    Args:
        level_name: Level for workbench loggers
        log_dir: Directory for rotating log files, or empty for console only
        debug_mode: Route DEBUG-level learner chatter to the console as well

    Returns:
        dict: Logging configuration
    """
    log_level = get_log_level(level_name)

    handlers = {
        'console': {
            'class': 'logging.StreamHandler',
            'level': log_level,
            'formatter': 'colored',
            'filters': ['throttle'],
            'stream': 'ext://sys.stderr',
        },
    }
    # Without a log directory the console is the only sink, debug or not.
    console = ['console'] if (debug_mode or not log_dir) else []
    workbench_handlers = list(console)
    training_handlers = list(console)

    if log_dir:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        handlers['main_file'] = _rotating_file(log_path / 'main.log', logging.DEBUG, 'detailed', [])
        handlers['error_file'] = _rotating_file(log_path / 'error.log', logging.ERROR, 'detailed', [])
        handlers['training_file'] = _rotating_file(
            log_path / 'training.log', logging.DEBUG, 'json', ['training_events', 'below_error']
        )
        workbench_handlers = workbench_handlers + ['main_file', 'error_file']
        training_handlers = training_handlers + ['training_file', 'error_file']

    config = {
        'version': 1,
        'disable_existing_loggers': False,

        'formatters': {
            'colored': {
                '()': ColoredFormatter,
                'format': '%(levelname)s [%(name)s] %(message)s'
            },
            'detailed': {
                '()': DetailedFormatter,
                'format': '%(timestamp)s [%(levelname)s] %(module_path)s:%(lineno)d - %(message)s'
            },
            'json': {
                '()': JSONFormatter,
            },
        },

        'filters': {
            'training_events': {
                '()': TrainingEventFilter,
            },
            'below_error': {
                '()': LevelRangeFilter,
                'max_level': logging.WARNING,
            },
            'throttle': {
                '()': ThrottleFilter,
                'rate_limit': 100,
                'time_window': 60,
            },
        },

        'handlers': handlers,

        'loggers': {
            'detector.learners': {
                'level': log_level,
                'handlers': training_handlers,
                'propagate': False,
            },
            'detector.harness': {
                'level': log_level,
                'handlers': sorted(set(workbench_handlers) | set(training_handlers)),
                'propagate': False,
            },
            'detector.commands': {
                'level': log_level,
                'handlers': workbench_handlers,
                'propagate': False,
            },
            'detector': {
                'level': log_level,
                'handlers': workbench_handlers,
                'propagate': False,
            },
            'matplotlib': {
                'level': logging.WARNING,
                'handlers': workbench_handlers,
                'propagate': False,
            },
        },

        'root': {
            'level': logging.WARNING,
            'handlers': workbench_handlers,
        },
    }

    return config

