"""
Result record of one cross-validation or evaluation run.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from detector.flows import DATASET_ORDER
from detector.learners import LEARNERS, MODEL_ORDER
from detector.metrics import MetricReport
from detector.preprocessing import Scenario

METRIC_COLUMNS = ['accuracy', 'macro_precision', 'macro_recall', 'macro_fpr', 'macro_f1']


class Phase(str, Enum):
    CV = 'cv'
    EVAL = 'eval'


@dataclass
class EvalRun:
    """
    One row of the results table.

    A ``cv`` run holds 5-fold means (``fold_scores`` keeps the individual
    folds); an ``eval`` run holds the metrics of a single retrain-and-score.

    Attributes:
        model: Learner kind
        dataset: Capture or subset name
        scenario: binary or multiclass
        phase: cv or eval
        config: Hyperparameters the run used
        score: Macro-F1 as a percentage
        metrics: Metric name -> value (see ``METRIC_COLUMNS``)
        wall_time: Seconds spent
        fold_scores: Per-fold scores of a cv run
        report: Full report when the run was produced in this process
    """
    model: str
    dataset: str
    scenario: Scenario
    phase: Phase
    config: Dict
    score: float
    metrics: Dict[str, float] = field(default_factory=dict)
    wall_time: float = 0.0
    fold_scores: List[float] = field(default_factory=list)
    report: Optional[MetricReport] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.scenario = Scenario(self.scenario)
        self.phase = Phase(self.phase)

    @property
    def display_name(self) -> str:
        learner = LEARNERS.get(self.model)
        return learner.display_name if learner else self.model

    @property
    def key(self) -> tuple:
        return (self.model, self.dataset, self.scenario.value, self.phase.value)

    @classmethod
    def from_report(cls, model: str, dataset: str, scenario: Scenario, config: Dict,
                    report: MetricReport, wall_time: float) -> 'EvalRun':
        return cls(
            model=model,
            dataset=dataset,
            scenario=scenario,
            phase=Phase.EVAL,
            config=dict(config),
            score=report.score,
            metrics=report.as_row(),
            wall_time=wall_time,
            report=report,
        )


def order_key(model: str, dataset: str, scenario: str, phase: str) -> tuple:
    """
    Sort key for result tables: scenario, phase, model order, then capture
    order, with unknown models and datasets after the known ones by name.
    """
    def position(value: str, order: List[str]) -> tuple:
        return (order.index(value), '') if value in order else (len(order), value)

    return (
        list(Scenario).index(Scenario(scenario)),
        list(Phase).index(Phase(phase)),
        position(model, MODEL_ORDER),
        position(dataset, DATASET_ORDER),
    )


def sort_runs(runs: List[EvalRun]) -> List[EvalRun]:
    return sorted(runs, key=lambda run: order_key(*run.key))
