"""
Logging Utilities - Logging Configuration and Formatters

Centralized logging setup, formatters, and filters.
"""
from .config import get_logging_config, get_log_level
from .formatters import ColoredFormatter, DetailedFormatter, JSONFormatter
from .filters import LevelRangeFilter, TrainingEventFilter, ThrottleFilter

__all__ = [
    # Config
    'get_logging_config',
    'get_log_level',

    # Formatters
    'ColoredFormatter',
    'DetailedFormatter',
    'JSONFormatter',

    # Filters
    'LevelRangeFilter',
    'TrainingEventFilter',
    'ThrottleFilter',
]
