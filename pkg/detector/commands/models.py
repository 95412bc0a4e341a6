"""
Model commands: train, cross-validate, grid-search, DRL training and evaluation.
"""
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd

from detector.exceptions import ConfigurationError
from detector.harness import (
    EvalRun,
    HarnessSettings,
    LearnerFactory,
    cross_validate,
    eligible_models,
    fit_learner,
    grid_search,
    resolve_grid,
    score_learner,
    unsupervised_training_set,
    write_runs_csv,
)
from detector.learners import LEARNERS, MODEL_ORDER, Learner, load_learner, save_learner
from detector.preprocessing import EncodedDataset, Scenario, load_prepared
from detector.utils.serialization import compact_dumps, write_json
from .base import (
    ChoiceValidator,
    Command,
    CommandResult,
    OptionalValidator,
    PathExistsValidator,
    RangeValidator,
)

MODEL_FILE = '{kind}.model.json'
EPISODES_FILE = 'episodes.csv'
GRID_FILE = 'grid_{kind}.csv'
BEST_CONFIG_FILE = 'best_{kind}.json'


class ModelCommand(Command):
    """
    Base for commands that fit one model kind on a prepared dataset directory.

    Unsupervised kinds are trained on the contamination-subsampled training
    set and only accept the binary scenario.
    """

    def __init__(
        self,
        kind: str,
        data_dir,
        scenario: Scenario = Scenario.BINARY,
        config: Optional[Dict] = None,
        seed: int = 1,
        out_dir=None,
        settings: HarnessSettings = HarnessSettings(),
    ):
        super().__init__()
        self.kind = kind
        self.data_dir = data_dir
        self.scenario = Scenario(scenario)
        self.config = dict(config or {})
        self.seed = seed
        self.out_dir = out_dir
        self.settings = settings

    def validations(self):
        return {
            'model': (self.kind, [ChoiceValidator('model', MODEL_ORDER)]),
            'data': (self.data_dir, [PathExistsValidator('data', must_be_dir=True)]),
            'seed': (self.seed, [RangeValidator('seed', min_val=0, integer=True)]),
        }

    def factory(self, jobs: int = 1) -> LearnerFactory:
        return LearnerFactory(kind=self.kind, seed=self.seed, jobs=jobs, base_params=self.settings.base_params(self.kind))

    def load(self) -> Tuple[EncodedDataset, EncodedDataset]:
        """
        Training and evaluation sets for this kind.

        Raises:
            ConfigurationError: Kind cannot run in the scenario
        """
        if not eligible_models(self.scenario, [self.kind]):
            raise ConfigurationError(f"{LEARNERS[self.kind].display_name} cannot run the {self.scenario.value} scenario")
        train, evaluation = load_prepared(self.data_dir)
        if not LEARNERS[self.kind].supervised:
            train = unsupervised_training_set(train, self.seed)
        return train, evaluation

    def output_path(self, name: str) -> Optional[Path]:
        if self.out_dir is None:
            return None
        out_dir = Path(self.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        return out_dir / name


class TrainModelCommand(ModelCommand):
    """Fit one configuration on the full training set and save the model."""

    def run(self) -> CommandResult:
        train, _ = self.load()
        learner = fit_learner(self.factory(self.settings.jobs)(self.config), train, self.scenario)
        path = self.output_path(MODEL_FILE.format(kind=self.kind))
        if path is not None:
            save_learner(learner, path)
        return CommandResult(success=True, data=learner, metadata={'model_path': str(path) if path else None})


class CrossValidateCommand(ModelCommand):
    """k-fold cross-validation of one configuration."""

    def run(self) -> CommandResult:
        if self.kind == 'drl':
            raise ConfigurationError("DRL is evaluated without cross-validation")
        train, _ = self.load()
        result = cross_validate(self.factory(), self.config, train, self.scenario,
                                k=self.settings.folds, seed=self.seed, jobs=self.settings.jobs)
        run = result.to_run(self.kind, Path(self.data_dir).name, self.scenario)
        path = self.output_path('runs.csv')
        if path is not None:
            write_runs_csv([run], path)
        return CommandResult(success=True, data=result, metadata={'run': run})


class GridSearchCommand(ModelCommand):
    """Grid search by cross-validated macro-F1; writes every point's scores and the winner."""

    def __init__(self, *args, grid_overrides: Optional[Dict[str, List[Dict]]] = None, **kwargs):
        super().__init__(*args, **kwargs)
        self.grid_overrides = dict(grid_overrides or {})

    def run(self) -> CommandResult:
        if self.kind == 'drl':
            raise ConfigurationError("DRL is tuned by hand, not grid-searched")
        train, _ = self.load()
        grid = resolve_grid(self.kind, train, self.scenario, self.settings.folds, self.grid_overrides)
        search = grid_search(self.factory(), grid, train, self.scenario,
                             k=self.settings.folds, seed=self.seed, jobs=self.settings.jobs)

        path = self.output_path(GRID_FILE.format(kind=self.kind))
        if path is not None:
            rows = [{'point': i, 'config': compact_dumps(r.config), 'mean_score': r.mean_score,
                     **{f'fold_{j}': score for j, score in enumerate(r.fold_scores)}}
                    for i, r in enumerate(search.results)]
            pd.DataFrame(rows).to_csv(path, index=False, float_format='%.10g', lineterminator='\n')
            write_json(self.output_path(BEST_CONFIG_FILE.format(kind=self.kind)),
                       {'model': self.kind, 'config': search.best_config, 'score': search.best_score})
        return CommandResult(success=True, data=search)


class TrainDrlCommand(ModelCommand):
    """Train the reinforcement-learning detector; saves the network and the episode log."""

    def __init__(self, data_dir, scenario: Scenario = Scenario.BINARY, config: Optional[Dict] = None,
                 seed: int = 1, out_dir=None, settings: HarnessSettings = HarnessSettings()):
        super().__init__('drl', data_dir, scenario, config, seed, out_dir, settings)

    def run(self) -> CommandResult:
        train, evaluation = self.load()
        learner = fit_learner(self.factory()(self.config), train, self.scenario)
        report = score_learner(learner, evaluation, self.scenario)
        if not learner.converged:
            self.logger.warning("DRL training stopped at the episode cap without a stable loss")

        model_path = self.output_path(MODEL_FILE.format(kind='drl'))
        if model_path is not None:
            save_learner(learner, model_path)
            pd.DataFrame([entry.as_row() for entry in learner.episodes], columns=['episode', 'epsilon', 'mean_loss']) \
                .to_csv(self.output_path(EPISODES_FILE), index=False, float_format='%.10g', lineterminator='\n')
        return CommandResult(
            success=True,
            data=report,
            metadata={'converged': learner.converged, 'episodes': len(learner.episodes)},
        )


class EvaluateModelCommand(Command):
    """Score a saved model on the evaluation set of a prepared dataset."""

    def __init__(self, model_path, data_dir, scenario: Optional[Scenario] = None, out_dir=None, dataset: str = ''):
        super().__init__()
        self.model_path = model_path
        self.data_dir = data_dir
        self.scenario = Scenario(scenario) if scenario else None
        self.out_dir = out_dir
        self.dataset = dataset

    def validations(self):
        return {
            'model file': (self.model_path, [PathExistsValidator('model file', must_be_file=True)]),
            'data': (self.data_dir, [PathExistsValidator('data', must_be_dir=True)]),
            'scenario': (self.scenario, [OptionalValidator(ChoiceValidator('scenario', list(Scenario)))]),
        }

    @staticmethod
    def infer_scenario(learner: Learner) -> Scenario:
        """Models fitted on more than two classes are multi-class models."""
        return Scenario.MULTICLASS if (learner.n_classes or 2) > 2 else Scenario.BINARY

    def run(self) -> CommandResult:
        learner = load_learner(self.model_path)
        scenario = self.scenario or self.infer_scenario(learner)
        _, evaluation = load_prepared(self.data_dir)
        report = score_learner(learner, evaluation, scenario)
        run = EvalRun.from_report(learner.kind, self.dataset or Path(self.data_dir).name, scenario,
                                  learner.params, report, 0.0)
        if self.out_dir is not None:
            write_runs_csv([run], Path(self.out_dir) / 'runs.csv')
        return CommandResult(success=True, data=report, metadata={'run': run})
