"""
Exception hierarchy for the workbench.

Algorithm and service code raises these; command objects convert them into
failed CommandResults and management commands into exit codes.
"""
from typing import Optional


class FlowSentryError(Exception):
    """Base class for all workbench errors."""

    kind = 'error'


class CaptureFormatError(FlowSentryError, ValueError):
    """A capture file cannot be read as a Zeek log at all."""

    kind = 'capture_format'


class MalformedRowError(FlowSentryError, ValueError):
    """A single data row cannot be parsed."""

    kind = 'malformed_row'

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class InvalidFlowError(FlowSentryError, ValueError):
    """A flow record violates a field invariant."""

    kind = 'invalid_flow'


class DatasetError(FlowSentryError, ValueError):
    """The data cannot support the requested operation."""

    kind = 'dataset'


class ConfigurationError(FlowSentryError, ValueError):
    """A learner or run configuration is invalid."""

    kind = 'configuration'


class TrainingError(FlowSentryError, ValueError):
    """Training could not proceed on the given data."""

    kind = 'training'

    def __init__(self, message: str, fold_index: Optional[int] = None):
        self.fold_index = fold_index
        if fold_index is not None:
            message = f"fold {fold_index}: {message}"
        super().__init__(message)


class DimensionMismatchError(FlowSentryError, ValueError):
    """Feature count at prediction time differs from training."""

    kind = 'dimension'

    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"expected {expected} features, got {got}")


class EpisodeFinishedError(FlowSentryError, RuntimeError):
    """An environment step was requested after the episode ended."""

    kind = 'episode_finished'
