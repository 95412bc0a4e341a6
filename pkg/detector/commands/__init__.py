"""
Command Pattern implementation of the workbench operations.

Structure:
- base/: Core command pattern components (Command, CommandResult, validators)
- data: capture commands (summarize, preprocess, carve)
- models: model commands (train, crossval, gridsearch, drl-train, evaluate)
- reporting: experiment, report and compare

Management commands build these objects and turn their results into output
and exit codes.
"""
# Base components
from .base import Command, CommandResult

# Capture commands
from .data import CarveSubsetsCommand, PreprocessCaptureCommand, SummarizeCaptureCommand

# Model commands
from .models import (
    CrossValidateCommand,
    EvaluateModelCommand,
    GridSearchCommand,
    ModelCommand,
    TrainDrlCommand,
    TrainModelCommand,
)

# Reporting commands
from .reporting import CompareRunsCommand, RenderReportCommand, RunExperimentCommand

__all__ = [
    # Base
    'Command',
    'CommandResult',

    # Capture Commands
    'SummarizeCaptureCommand',
    'PreprocessCaptureCommand',
    'CarveSubsetsCommand',

    # Model Commands
    'ModelCommand',
    'TrainModelCommand',
    'CrossValidateCommand',
    'GridSearchCommand',
    'TrainDrlCommand',
    'EvaluateModelCommand',

    # Reporting Commands
    'RunExperimentCommand',
    'RenderReportCommand',
    'CompareRunsCommand',
]
