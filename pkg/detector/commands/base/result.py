"""
Command execution result.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from detector.exceptions import FlowSentryError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


@dataclass
class CommandResult:
    """
    Result of command execution.

    Attributes:
        success: Whether the command executed successfully
        data: Result data (summary, metric report, runs, written paths, ...)
        error: Error message (if failed)
        metadata: Additional metadata; failures carry the error ``kind``
    """
    success: bool
    data: Any = None
    error: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def failure(cls, error: Union[str, Exception], **metadata) -> 'CommandResult':
        """Failed result; exceptions from the workbench hierarchy record their kind."""
        if isinstance(error, FlowSentryError):
            metadata.setdefault('kind', error.kind)
        return cls(success=False, error=str(error), metadata=metadata)

    @property
    def kind(self) -> Optional[str]:
        return self.metadata.get('kind')

    @property
    def exit_code(self) -> int:
        """0 on success; every failed command is a data or configuration error."""
        return EXIT_OK if self.success else EXIT_DATA

    def __bool__(self) -> bool:
        return self.success

    def __repr__(self) -> str:
        status = "SUCCESS" if self.success else "FAILED"
        if self.error:
            return f"CommandResult({status}, error='{self.error}')"
        return f"CommandResult({status})"
