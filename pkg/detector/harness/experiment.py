"""
The full protocol for one capture: prepare, search, retrain, evaluate.
"""
from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional, Sequence

from detector.exceptions import ConfigurationError
from detector.flows.record import FlowRecord
from detector.learners import LEARNERS, MODEL_ORDER
from detector.preprocessing import (
    EncodedDataset,
    Scenario,
    SplitSpec,
    prepare_dataset,
    subsample_contamination,
)
from .evaluation import LearnerFactory, final_evaluate
from .grid import resolve_grid
from .runs import EvalRun, sort_runs
from .search import grid_search

logger = logging.getLogger(__name__)

UNSUPERVISED_CONTAMINATION = 0.05
NOT_CROSS_VALIDATED = ('drl',)


@dataclass(frozen=True)
class HarnessSettings:
    """
    Protocol constants shared by every experiment.

    Attributes:
        folds: Cross-validation folds
        eval_fraction: Share of each class held out for evaluation
        jobs: Worker cap for grid points and One-vs-All training
        histogram_min_rows: Level-wise boosting switches to histogram splits at this size
        max_episodes: DRL episode cap
    """
    folds: int = 5
    eval_fraction: float = 0.2
    jobs: int = 1
    histogram_min_rows: int = 50_000
    max_episodes: int = 1000

    def base_params(self, kind: str) -> Dict:
        """Per-kind settings every grid point of ``kind`` inherits."""
        if kind == 'xgboost':
            return {'histogram_min_rows': self.histogram_min_rows}
        if kind == 'drl':
            return {'max_episodes': self.max_episodes}
        return {}


def unsupervised_training_set(train: EncodedDataset, seed: int = 1) -> EncodedDataset:
    """Training set of an unsupervised model: malicious rows cut to 5% when above it."""
    return subsample_contamination(train, UNSUPERVISED_CONTAMINATION, seed)


def eligible_models(scenario: Scenario, models: Optional[Sequence[str]] = None) -> List[str]:
    """
    Requested models that run in ``scenario``, in report order.

    Raises:
        ConfigurationError: Unknown model name
    """
    requested = list(models) if models else list(MODEL_ORDER)
    unknown = [kind for kind in requested if kind not in LEARNERS]
    if unknown:
        raise ConfigurationError(f"unknown models: {', '.join(unknown)}")
    return [
        kind for kind in MODEL_ORDER
        if kind in requested and (scenario == Scenario.BINARY or LEARNERS[kind].multiclass_capable)
    ]


@dataclass
class ExperimentRunner:
    """
    Runs the protocol for one capture.

    Attributes:
        settings: Protocol constants
        grid_overrides: Model kind -> explicit grid points replacing the default grid
    """
    settings: HarnessSettings = field(default_factory=HarnessSettings)
    grid_overrides: Dict[str, List[Dict]] = field(default_factory=dict)

    def run_model(self, kind: str, train: EncodedDataset, evaluation: EncodedDataset,
                  scenario: Scenario, dataset: str, seed: int) -> List[EvalRun]:
        """CV run (when the model is searched) plus the final evaluation run."""
        factory = LearnerFactory(kind=kind, seed=seed, jobs=1, base_params=self.settings.base_params(kind))
        if not LEARNERS[kind].supervised:
            train = unsupervised_training_set(train, seed)

        runs = []
        config: Dict = {}
        if kind not in NOT_CROSS_VALIDATED:
            grid = resolve_grid(kind, train, scenario, self.settings.folds, self.grid_overrides)
            search = grid_search(factory, grid, train, scenario, k=self.settings.folds, seed=seed, jobs=self.settings.jobs)
            runs.append(search.best.to_run(kind, dataset, scenario))
            config = search.best_config
        elif self.grid_overrides.get(kind):
            config = dict(self.grid_overrides[kind][0])

        runs.append(final_evaluate(factory, config, train, evaluation, scenario, dataset))
        return runs

    def run(
        self,
        records: Sequence[FlowRecord],
        dataset: str,
        scenarios: Optional[Sequence[Scenario]] = None,
        models: Optional[Sequence[str]] = None,
        seed: int = 1,
    ) -> List[EvalRun]:
        """
        Every eligible (scenario, model) pair on one capture.

        The multi-class scenario is skipped when fewer than two malicious
        classes survive singleton removal; unsupervised models only run
        binary; DRL is evaluated without cross-validation.
        """
        scenarios = [Scenario(s) for s in scenarios] if scenarios else list(Scenario)
        split = SplitSpec(eval_fraction=self.settings.eval_fraction, seed=seed)
        runs: List[EvalRun] = []

        for scenario in scenarios:
            prepared = prepare_dataset(records, scenario, split)
            if scenario == Scenario.MULTICLASS and not prepared.multiclass_eligible:
                logger.info(f"{dataset}: fewer than two malicious classes, skipping the multi-class scenario")
                continue
            for kind in eligible_models(scenario, models):
                logger.info(f"{dataset}: {LEARNERS[kind].display_name} ({scenario.value})")
                runs += self.run_model(kind, prepared.train, prepared.evaluation, scenario, dataset, seed)

        return sort_runs(runs)


def run_experiment(
    records: Sequence[FlowRecord],
    dataset_name: str,
    scenarios: Optional[Sequence[Scenario]] = None,
    models: Optional[Sequence[str]] = None,
    seed: int = 1,
    settings: HarnessSettings = HarnessSettings(),
    grid_overrides: Optional[Dict[str, List[Dict]]] = None,
) -> List[EvalRun]:
    """Run the protocol on one capture and return its runs in report order."""
    runner = ExperimentRunner(settings=settings, grid_overrides=dict(grid_overrides or {}))
    return runner.run(records, dataset_name, scenarios, models, seed)
