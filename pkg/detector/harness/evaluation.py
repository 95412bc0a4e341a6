"""
Fitting, scoring and the final retrain-and-evaluate step.
"""
from dataclasses import dataclass, field
import logging
import time
from typing import Callable, Dict, Optional

from detector.learners import Learner, create_learner
from detector.metrics import MetricReport, evaluate_predictions
from detector.preprocessing import EncodedDataset, Scenario
from .runs import EvalRun

logger = logging.getLogger(__name__)


@dataclass
class LearnerFactory:
    """
    Builds fresh learners of one kind for a grid point.

    ``base_params`` are settings shared by every point (e.g. the histogram
    threshold); grid-point values override them.
    """
    kind: str
    seed: int = 1
    jobs: int = 1
    base_params: Dict = field(default_factory=dict)

    def __call__(self, config: Dict) -> Learner:
        return create_learner(self.kind, seed=self.seed, jobs=self.jobs, **{**self.base_params, **config})


def learner_factory(kind: str, seed: int = 1, jobs: int = 1, **base_params) -> LearnerFactory:
    return LearnerFactory(kind=kind, seed=seed, jobs=jobs, base_params=base_params)


def fit_learner(learner: Learner, train: EncodedDataset, scenario: Scenario) -> Learner:
    """Fit on a training set; unsupervised learners get no labels."""
    n_classes = len(train.target_names(scenario))
    if learner.supervised:
        return learner.fit(train.features, train.targets(scenario), n_classes=n_classes)
    return learner.fit(train.features, n_classes=2)


def score_learner(learner: Learner, dataset: EncodedDataset, scenario: Scenario) -> MetricReport:
    """Predict a dataset and score it against the scenario's targets."""
    predictions = learner.predict(dataset.features)
    return evaluate_predictions(dataset.targets(scenario), predictions, dataset.target_names(scenario), scenario)


def final_evaluate(
    factory: Callable[[Dict], Learner],
    config: Dict,
    train: EncodedDataset,
    evaluation: EncodedDataset,
    scenario: Scenario,
    dataset: str = '',
    learner_sink: Optional[Callable[[Learner], None]] = None,
) -> EvalRun:
    """
    Retrain on the complete training set and score the evaluation set.

    Args:
        factory: Learner factory from ``learner_factory``
        config: Chosen configuration
        train: Full training set (contamination-subsampled for unsupervised models)
        evaluation: Untouched evaluation set
        scenario: Classification scenario
        dataset: Name recorded on the run
        learner_sink: Receives the fitted learner (used to persist it)
    """
    started = time.perf_counter()
    learner = fit_learner(factory(config), train, scenario)
    report = score_learner(learner, evaluation, scenario)
    elapsed = time.perf_counter() - started
    if learner_sink is not None:
        learner_sink(learner)

    logger.info(f"{learner.display_name} {scenario.value} evaluation on {dataset or 'dataset'}: "
                f"score {report.score:.2f} ({elapsed:.1f}s)")
    return EvalRun.from_report(learner.kind, dataset, scenario, config, report, elapsed)
