"""
Capture commands: summarize, preprocess and carve.
"""
from pathlib import Path
from typing import Optional

from detector.flows import ConnLogParser, summarize_capture, write_conn_log
from detector.preprocessing import (
    DatasetPreparationService,
    Scenario,
    carve_subsets,
    save_prepared,
)
from .base import (
    Command,
    CommandResult,
    PathExistsValidator,
    RangeValidator,
    RequiredFieldValidator,
)

SUBSET_FILE_SUFFIX = '.conn.log.labeled'


def _read_capture(parser: ConnLogParser, path) -> list:
    with open(path, 'r', encoding='utf-8') as stream:
        return parser.parse(stream)


class SummarizeCaptureCommand(Command):
    """
    Per-class flow counts of one capture log.

    Example:
        result = SummarizeCaptureCommand('42-1/conn.log.labeled', capture_name='42-1').execute()
        result.data.total_samples  # 4427
    """

    def __init__(self, log_path, capture_name: Optional[str] = None, parser: Optional[ConnLogParser] = None):
        super().__init__()
        self.log_path = log_path
        self.capture_name = capture_name
        self.parser = parser or ConnLogParser()

    def validations(self):
        return {'log': (self.log_path, [PathExistsValidator('log', must_be_file=True)])}

    def run(self) -> CommandResult:
        records = _read_capture(self.parser, self.log_path)
        summary = summarize_capture(records, self.capture_name)
        differences = summary.catalogue_differences()
        return CommandResult(success=True, data=summary, metadata={'differences': differences})


class PreprocessCaptureCommand(Command):
    """Parse, split and encode a capture; write train.csv, eval.csv and schema.json."""

    def __init__(
        self,
        log_path,
        out_dir,
        scenario: Scenario = Scenario.BINARY,
        seed: int = 1,
        service: Optional[DatasetPreparationService] = None,
        parser: Optional[ConnLogParser] = None,
    ):
        super().__init__()
        self.log_path = log_path
        self.out_dir = out_dir
        self.scenario = Scenario(scenario)
        self.seed = seed
        self.service = service or DatasetPreparationService(seed=seed)
        self.parser = parser or ConnLogParser()

    def validations(self):
        return {
            'log': (self.log_path, [PathExistsValidator('log', must_be_file=True)]),
            'out': (self.out_dir, [RequiredFieldValidator('out')]),
            'seed': (self.seed, [RangeValidator('seed', min_val=0, integer=True)]),
        }

    def run(self) -> CommandResult:
        records = _read_capture(self.parser, self.log_path)
        prepared = self.service.prepare(records, self.scenario, seed=self.seed)
        out_dir = save_prepared(prepared.train, prepared.evaluation, self.out_dir)
        return CommandResult(
            success=True,
            data=prepared,
            metadata={'out': str(out_dir), 'dropped_classes': prepared.dropped_classes},
        )


class CarveSubsetsCommand(Command):
    """Write the three balanced 1-1 subsets as labeled conn logs."""

    def __init__(self, log_path, out_dir, seed: int = 1, parser: Optional[ConnLogParser] = None):
        super().__init__()
        self.log_path = log_path
        self.out_dir = out_dir
        self.seed = seed
        self.parser = parser or ConnLogParser()

    def validations(self):
        return {
            'log': (self.log_path, [PathExistsValidator('log', must_be_file=True)]),
            'out': (self.out_dir, [RequiredFieldValidator('out')]),
            'seed': (self.seed, [RangeValidator('seed', min_val=0, integer=True)]),
        }

    def run(self) -> CommandResult:
        records = _read_capture(self.parser, self.log_path)
        out_dir = Path(self.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        written = {}
        for name, subset in carve_subsets(records, self.seed).items():
            path = out_dir / f'{name}{SUBSET_FILE_SUFFIX}'
            with open(path, 'w', encoding='utf-8', newline='\n') as stream:
                write_conn_log(subset, stream)
            written[name] = path
        return CommandResult(success=True, data=written, metadata={'out': str(out_dir)})
