"""
Command-line entry point.

``python -m detector <subcommand> ...`` and ``python manage.py <command> ...``
reach the same management commands; this module adds the subcommand table,
the usage text and the run-configuration precedence chain
(flag > config file > environment > built-in default).
"""
from dataclasses import dataclass, field, fields
import os
import sys
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, TextIO, Tuple

from detector.exceptions import ConfigurationError
from detector.commands.base import (
    EXIT_USAGE,
    ChoiceValidator,
    CompositeValidator,
    OptionalValidator,
    PathExistsValidator,
    RangeValidator,
    RequiredFieldValidator,
    validate_all,
)

SEED_ENV = 'FLOWSENTRY_SEED'
DEFAULT_SEED = 1

# CLI name -> management command name
SUBCOMMANDS: Dict[str, str] = {
    'summarize': 'summarize',
    'preprocess': 'preprocess',
    'carve': 'carve',
    'train': 'train',
    'crossval': 'crossval',
    'gridsearch': 'gridsearch',
    'drl-train': 'drltrain',
    'evaluate': 'evaluate',
    'report': 'report',
    'compare': 'compare',
    'experiment': 'experiment',
}

USAGE = """usage: flowsentry <subcommand> [options]

subcommands:
  summarize <log> [--capture NAME]            per-class flow counts of a capture
  preprocess <log> --out DIR                  encoded train/eval CSVs + schema JSON
  carve <1-1 log> --out DIR                   the three balanced 1-1 subsets
  train <model> --data DIR [--params JSON]    fit and save one model
  crossval <model> --data DIR                 k-fold cross-validation
  gridsearch <model> --data DIR               grid search by cross-validated macro-F1
  drl-train --data DIR                        train the reinforcement-learning detector
  evaluate <model-file> --data DIR            score a saved model on the evaluation set
  report --runs FILE --out DIR                runs/deltas CSVs, markdown report, charts
  compare --runs FILE                         delta table against published scores
  experiment <log> --dataset NAME --out DIR   the full protocol on one capture

common options: --seed N  --config FILE  --jobs N  --out DIR
models: svm, xgboost, lightgbm, iforest, lof, drl
"""


@dataclass
class RunConfig:
    """
    Resolved options of one invocation.

    Attributes:
        captures: Capture log paths
        carve: Treat the capture as 1-1 and also run its three subsets
        scenario: 'binary', 'multiclass', or None for both (experiment) / binary (others)
        models: Selected model kinds (empty = all)
        grid: Model kind -> explicit grid points
        params: Hyperparameters of a single train/crossval/drl-train run
        seed: Seed of every random choice
        out: Output directory; nothing is written when None
        jobs: Worker cap
        data: Prepared dataset directory
        dataset: Dataset name recorded on runs
    """
    captures: List[str] = field(default_factory=list)
    carve: bool = False
    scenario: Optional[str] = None
    models: List[str] = field(default_factory=list)
    grid: Dict[str, List[Dict]] = field(default_factory=dict)
    params: Dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    jobs: int = 1
    data: Optional[str] = None
    dataset: Optional[str] = None

    @classmethod
    def read_file(cls, path) -> dict:
        """
        Values of a JSON run-configuration file.

        Raises:
            ConfigurationError: Missing file, invalid JSON or unknown keys
        """
        from detector.utils.serialization import read_json

        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        try:
            values = read_json(path)
        except ValueError as e:
            raise ConfigurationError(f"{path}: invalid JSON: {e}") from e
        if not isinstance(values, dict):
            raise ConfigurationError(f"{path}: expected a JSON object")
        unknown = sorted(set(values) - {f.name for f in fields(cls)})
        if unknown:
            raise ConfigurationError(f"{path}: unknown keys {', '.join(unknown)}")
        return values

    @classmethod
    def resolve(
        cls,
        options: Mapping,
        environ: Optional[Mapping[str, str]] = None,
        default_jobs: int = 1,
        default_seed: int = DEFAULT_SEED,
    ) -> 'RunConfig':
        """
        Merge command-line options, the ``--config`` file and the environment.

        Args:
            options: Parsed command options (None / missing = not given)
            environ: Environment used for the seed fallback
            default_jobs: Worker cap when neither flag nor file sets one
            default_seed: Seed when flag, file and environment are all silent
        """
        environ = os.environ if environ is None else environ
        from_file = cls.read_file(options['config']) if options.get('config') else {}

        def pick(name, flag, default):
            if flag is not None and flag != [] and flag is not False:
                return flag
            return from_file.get(name, default)

        env_seed = environ.get(SEED_ENV)
        if env_seed not in (None, ''):
            try:
                default_seed = int(env_seed)
            except ValueError:
                raise ConfigurationError(f"{SEED_ENV} must be an integer, got {env_seed!r}")

        captures = options.get('captures') or ([options['log']] if options.get('log') else None)
        models = options.get('models') or ([options['model']] if options.get('model') else None)
        return cls(
            captures=[str(p) for p in pick('captures', captures, [])],
            carve=bool(pick('carve', options.get('carve'), False)),
            scenario=pick('scenario', options.get('scenario'), None),
            models=list(pick('models', models, [])),
            grid=dict(from_file.get('grid', {})),
            params=dict(pick('params', options.get('params'), {})),
            seed=pick('seed', options.get('seed'), default_seed),
            out=pick('out', options.get('out'), None),
            jobs=pick('jobs', options.get('jobs'), default_jobs),
            data=pick('data', options.get('data'), None),
            dataset=pick('dataset', options.get('dataset'), None),
        )

    def validate(self) -> Tuple[bool, Optional[str]]:
        from detector.learners import MODEL_ORDER

        return validate_all({
            'captures': (self.captures, [PathExistsValidator('capture', must_be_file=True)]),
            'data': (self.data, [OptionalValidator(CompositeValidator([
                RequiredFieldValidator('data'),
                PathExistsValidator('data', must_be_dir=True),
            ]))]),
            'dataset': (self.dataset, [OptionalValidator(RequiredFieldValidator('dataset'))]),
            'scenario': (self.scenario, [OptionalValidator(ChoiceValidator('scenario', ['binary', 'multiclass']))]),
            'models': (self.models, [ChoiceValidator('models', MODEL_ORDER)]),
            'grid': (list(self.grid), [ChoiceValidator('grid model', MODEL_ORDER)]),
            'seed': (self.seed, [RangeValidator('seed', min_val=0, integer=True)]),
            'jobs': (self.jobs, [RangeValidator('jobs', min_val=1, integer=True)]),
        })


def usage() -> str:
    return USAGE


def dispatch(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Run one subcommand.

    Returns:
        int: 0 on success, 1 on usage errors, 2 on data or configuration errors
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)

    if not argv:
        stderr.write(USAGE)
        return EXIT_USAGE
    if argv[0] in ('-h', '--help', 'help'):
        stdout.write(USAGE)
        return 0
    if argv[0] not in SUBCOMMANDS:
        stderr.write(f"unknown subcommand: {argv[0]}\n\n{USAGE}")
        return EXIT_USAGE

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'flowsentry.settings')
    import django
    from django.core.management import call_command
    from django.core.management.base import CommandError

    django.setup()
    try:
        call_command(SUBCOMMANDS[argv[0]], *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as e:
        stderr.write(f"{e}\n")
        return e.returncode
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    return 0
