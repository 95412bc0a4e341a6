"""
Stratified k-fold cross-validation on macro-F1.
"""
from dataclasses import dataclass, field
import logging
import math
import time
from typing import Callable, Dict, List

import numpy as np

from detector.exceptions import FlowSentryError, TrainingError
from detector.learners import Learner
from detector.metrics import MetricReport
from detector.preprocessing import EncodedDataset, Scenario, make_folds
from detector.utils.concurrency import run_jobs
from .evaluation import fit_learner, score_learner
from .runs import METRIC_COLUMNS, EvalRun, Phase

logger = logging.getLogger(__name__)


@dataclass
class CrossValidationResult:
    """
    Fold scores of one configuration.

    Attributes:
        config: Configuration that was validated
        fold_scores: Macro-F1 percentage of every fold, in fold order
        fold_reports: Full metric report of every fold
        wall_time: Seconds spent on all folds
    """
    config: Dict
    fold_scores: List[float]
    fold_reports: List[MetricReport] = field(default_factory=list, repr=False)
    wall_time: float = 0.0

    @property
    def mean_score(self) -> float:
        return math.fsum(self.fold_scores) / len(self.fold_scores)

    def mean_metrics(self) -> Dict[str, float]:
        return {
            name: math.fsum(report.as_row()[name] for report in self.fold_reports) / len(self.fold_reports)
            for name in METRIC_COLUMNS
        }

    def to_run(self, model: str, dataset: str, scenario: Scenario) -> EvalRun:
        return EvalRun(
            model=model,
            dataset=dataset,
            scenario=scenario,
            phase=Phase.CV,
            config=dict(self.config),
            score=self.mean_score,
            metrics=self.mean_metrics() if self.fold_reports else {},
            wall_time=self.wall_time,
            fold_scores=list(self.fold_scores),
        )


def cross_validate(
    factory: Callable[[Dict], Learner],
    config: Dict,
    train: EncodedDataset,
    scenario: Scenario,
    k: int = 5,
    seed: int = 1,
    jobs: int = 1,
) -> CrossValidationResult:
    """
    Fit on k-1 folds and score the held-out fold, for every fold.

    Folds are stratified on the multi-class labels so every attack type is
    spread over the folds in both scenarios.

    Args:
        factory: Builds a fresh learner from ``config``
        config: Configuration under test
        train: Training set to fold
        scenario: Which targets are fitted and scored
        k: Number of folds
        seed: Fold shuffle seed
        jobs: Folds run concurrently up to this many workers

    Returns:
        CrossValidationResult

    Raises:
        TrainingError: A fold failed; ``fold_index`` names it
    """
    folds = make_folds(train.multiclass_targets, k, seed)
    started = time.perf_counter()

    def run_fold(fold) -> MetricReport:
        try:
            learner = fit_learner(factory(config), train.subset(fold.train_indices), scenario)
            return score_learner(learner, train.subset(fold.validation_indices), scenario)
        except FlowSentryError as e:
            raise TrainingError(str(e), fold_index=fold.index) from e

    reports = run_jobs(run_fold, folds, jobs)
    result = CrossValidationResult(
        config=dict(config),
        fold_scores=[report.score for report in reports],
        fold_reports=reports,
        wall_time=time.perf_counter() - started,
    )
    logger.debug(f"CV {config}: mean {result.mean_score:.3f}, spread {np.ptp(result.fold_scores):.3f}",
                 extra={'grid_point': config})
    return result
