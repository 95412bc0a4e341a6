"""
Experiment, report and comparison commands.
"""
from pathlib import Path
from typing import Dict, Optional, Sequence

from detector.flows import ConnLogParser
from detector.harness import (
    ExperimentRunner,
    ReportRenderer,
    read_runs_csv,
    write_deltas_csv,
    write_runs_csv,
)
from detector.learners import MODEL_ORDER
from detector.preprocessing import Scenario, carve_subsets
from .base import (
    ChoiceValidator,
    Command,
    CommandResult,
    PathExistsValidator,
    RangeValidator,
    RequiredFieldValidator,
)


class RunExperimentCommand(Command):
    """
    Full protocol on one capture; writes runs.csv.

    With ``carve`` set the capture is treated as 1-1: the full capture and
    its three subsets are each run as their own dataset.
    """

    def __init__(
        self,
        log_path,
        dataset: str,
        out_dir,
        runner: Optional[ExperimentRunner] = None,
        scenarios: Optional[Sequence[Scenario]] = None,
        models: Optional[Sequence[str]] = None,
        seed: int = 1,
        carve: bool = False,
        parser: Optional[ConnLogParser] = None,
    ):
        super().__init__()
        self.log_path = log_path
        self.dataset = dataset
        self.out_dir = out_dir
        self.runner = runner or ExperimentRunner()
        self.scenarios = [Scenario(s) for s in scenarios] if scenarios else None
        self.models = list(models) if models else None
        self.seed = seed
        self.carve = carve
        self.parser = parser or ConnLogParser()

    def validations(self):
        validations = {
            'log': (self.log_path, [PathExistsValidator('log', must_be_file=True)]),
            'dataset': (self.dataset, [RequiredFieldValidator('dataset')]),
            'out': (self.out_dir, [RequiredFieldValidator('out')]),
            'seed': (self.seed, [RangeValidator('seed', min_val=0, integer=True)]),
        }
        if self.models:
            validations['models'] = (self.models, [ChoiceValidator('models', MODEL_ORDER)])
        return validations

    def datasets(self) -> Dict[str, list]:
        with open(self.log_path, 'r', encoding='utf-8') as stream:
            records = self.parser.parse(stream)
        if not self.carve:
            return {self.dataset: records}
        return {f'{self.dataset}-full': records, **carve_subsets(records, self.seed)}

    def run(self) -> CommandResult:
        runs = []
        for name, records in self.datasets().items():
            runs += self.runner.run(records, name, self.scenarios, self.models, self.seed)
        path = write_runs_csv(runs, Path(self.out_dir) / 'runs.csv')
        self.logger.info(f"{len(runs)} runs written to {path}")
        return CommandResult(success=True, data=runs, metadata={'runs_path': str(path)})


class RenderReportCommand(Command):
    """runs.csv in; runs.csv, deltas.csv, report.md and charts out."""

    def __init__(self, runs_path, out_dir, renderer: Optional[ReportRenderer] = None):
        super().__init__()
        self.runs_path = runs_path
        self.out_dir = out_dir
        self.renderer = renderer or ReportRenderer()

    def validations(self):
        return {
            'runs': (self.runs_path, [PathExistsValidator('runs', must_be_file=True)]),
            'out': (self.out_dir, [RequiredFieldValidator('out')]),
        }

    def run(self) -> CommandResult:
        runs = read_runs_csv(self.runs_path)
        written = self.renderer.render(runs, self.out_dir)
        return CommandResult(success=True, data=written)


class CompareRunsCommand(Command):
    """Delta table of a runs file against the published scores."""

    def __init__(self, runs_path, out_dir=None, renderer: Optional[ReportRenderer] = None,
                 all_datasets: bool = False):
        super().__init__()
        self.runs_path = runs_path
        self.out_dir = out_dir
        self.renderer = renderer or ReportRenderer()
        self.all_datasets = all_datasets

    def validations(self):
        return {'runs': (self.runs_path, [PathExistsValidator('runs', must_be_file=True)])}

    def run(self) -> CommandResult:
        runs = read_runs_csv(self.runs_path)
        deltas = self.renderer.compare(runs, only_run_datasets=not self.all_datasets)
        if self.out_dir is not None:
            write_deltas_csv(deltas, Path(self.out_dir) / 'deltas.csv')
        return CommandResult(success=True, data=deltas)
