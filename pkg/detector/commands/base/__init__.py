"""
Base command pattern components.
"""
from .command import Command
from .result import EXIT_DATA, EXIT_OK, EXIT_USAGE, CommandResult
from .validators import (
    Validator,
    RequiredFieldValidator,
    PathExistsValidator,
    ChoiceValidator,
    RangeValidator,
    CompositeValidator,
    OptionalValidator,
    validate_all,
)

__all__ = [
    'Command',
    'CommandResult',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_DATA',
    'Validator',
    'RequiredFieldValidator',
    'PathExistsValidator',
    'ChoiceValidator',
    'RangeValidator',
    'CompositeValidator',
    'OptionalValidator',
    'validate_all',
]
