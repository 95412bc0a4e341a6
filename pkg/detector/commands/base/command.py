"""
Abstract base command class.
"""
from abc import ABC, abstractmethod
import logging
from typing import Any, Dict, List, Optional, Tuple

from detector.exceptions import ConfigurationError, FlowSentryError
from .result import CommandResult
from .validators import Validator, validate_all


class Command(ABC):
    """
    One workbench operation: validate inputs, run, report a CommandResult.

    Subclasses list their checks in ``validations()`` and implement
    ``run()``. ``execute()`` never raises for workbench errors or file
    errors; it returns a failed result carrying the error kind instead.

    Example:
        class CountFlowsCommand(Command):
            def __init__(self, log_path):
                super().__init__()
                self.log_path = log_path

            def validations(self):
                return {'log': (self.log_path, [PathExistsValidator('log', must_be_file=True)])}

            def run(self):
                return CommandResult(success=True, data=len(parse_conn_log_file(self.log_path)))
    """

    def __init__(self):
        self.logger = logging.getLogger(f'detector.commands.{self.__class__.__name__}')

    def validations(self) -> Dict[str, Tuple[Any, List[Validator]]]:
        """Field name -> (value, validators) checked before ``run``."""
        return {}

    def validate(self) -> Tuple[bool, Optional[str]]:
        return validate_all(self.validations())

    @abstractmethod
    def run(self) -> CommandResult:
        raise NotImplementedError(f"{self.__class__.__name__} must implement run()")

    def execute(self) -> CommandResult:
        """Validate, then run; workbench and file errors become failed results."""
        is_valid, error = self.validate()
        if not is_valid:
            self.logger.error(f"Invalid arguments: {error}")
            return CommandResult.failure(ConfigurationError(error))

        try:
            return self.run()
        except FlowSentryError as e:
            self.logger.error(f"{self} failed: {e}")
            return CommandResult.failure(e)
        except OSError as e:
            self.logger.error(f"{self} failed on file access: {e}")
            return CommandResult.failure(e, kind='io')

    def __str__(self) -> str:
        return f"{self.__class__.__name__}"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} at {hex(id(self))}>"
