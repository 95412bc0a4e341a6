"""
Evaluation harness: grid search with k-fold CV, final evaluation, comparison
with published scores and report rendering.
"""
from .comparison import DeltaRow, DeltaStatus, compare_to_reference
from .cross_validation import CrossValidationResult, cross_validate
from .evaluation import LearnerFactory, final_evaluate, fit_learner, learner_factory, score_learner
from .experiment import ExperimentRunner, HarnessSettings, eligible_models, run_experiment, unsupervised_training_set
from .grid import GridSpec, contamination_grid, default_grid, resolve_grid
from .reference import PUBLISHED_SCORES, PublishedReference
from .report import ReportRenderer, render_chart, render_markdown, render_report
from .runs import EvalRun, Phase, sort_runs
from .runs_io import read_runs_csv, write_deltas_csv, write_runs_csv
from .search import SearchResult, grid_search

__all__ = [
    # Runs
    'EvalRun',
    'Phase',
    'sort_runs',
    'read_runs_csv',
    'write_runs_csv',
    'write_deltas_csv',
    # Search
    'GridSpec',
    'contamination_grid',
    'default_grid',
    'resolve_grid',
    'CrossValidationResult',
    'cross_validate',
    'SearchResult',
    'grid_search',
    # Evaluation
    'LearnerFactory',
    'learner_factory',
    'fit_learner',
    'score_learner',
    'final_evaluate',
    # Experiment
    'HarnessSettings',
    'ExperimentRunner',
    'eligible_models',
    'run_experiment',
    'unsupervised_training_set',
    # Comparison and report
    'PUBLISHED_SCORES',
    'PublishedReference',
    'DeltaRow',
    'DeltaStatus',
    'compare_to_reference',
    'ReportRenderer',
    'render_chart',
    'render_markdown',
    'render_report',
]
