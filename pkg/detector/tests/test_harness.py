import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from detector.exceptions import ConfigurationError, DatasetError, TrainingError
from detector.harness import (
    PUBLISHED_SCORES,
    DeltaStatus,
    EvalRun,
    ExperimentRunner,
    GridSpec,
    HarnessSettings,
    Phase,
    PublishedReference,
    compare_to_reference,
    cross_validate,
    default_grid,
    eligible_models,
    final_evaluate,
    grid_search,
    read_runs_csv,
    render_report,
    resolve_grid,
    sort_runs,
    write_runs_csv,
)
from detector.preprocessing import Scenario
from detector.tests.helpers import encoded_dataset, make_flows, stub_factory


def labelled_by_feature(n_per_class: int = 50, seed: int = 0):
    """Feature 0 equals the class, feature 1 is noise."""
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], n_per_class)
    X = np.column_stack([y.astype(float), rng.normal(size=len(y))])
    return encoded_dataset(X, y)


def with_ratio(n_benign: int, n_malicious: int):
    y = np.r_[np.zeros(n_benign, dtype=int), np.ones(n_malicious, dtype=int)]
    X = np.random.default_rng(1).normal(size=(len(y), 3))
    return encoded_dataset(X, y)


def run(model, dataset='34-1', scenario='binary', phase='eval', score=99.5, **extra):
    return EvalRun(model=model, dataset=dataset, scenario=scenario, phase=phase, config=extra.pop('config', {}),
                   score=score, **extra)


class CrossValidationTest(SimpleTestCase):

    def test_perfect_learner(self):
        result = cross_validate(stub_factory, {'mode': 'memorize'}, labelled_by_feature(), Scenario.BINARY)
        self.assertEqual(result.fold_scores, [100.0] * 5)
        self.assertEqual(result.mean_score, 100.0)

    def test_constant_learner_on_balanced_classes(self):
        result = cross_validate(stub_factory, {'mode': 'constant', 'label': 0}, labelled_by_feature(), Scenario.BINARY)
        self.assertEqual(len(result.fold_scores), 5)
        self.assertAlmostEqual(result.mean_score, 100 / 3)
        self.assertAlmostEqual(result.mean_score, sum(result.fold_scores) / 5)

    def test_rare_class_missing_from_some_folds(self):
        y = np.repeat([0, 1, 2], [50, 50, 3])
        X = np.column_stack([y.astype(float), np.random.default_rng(4).normal(size=len(y))])
        result = cross_validate(stub_factory, {'mode': 'memorize'}, encoded_dataset(X, y), Scenario.MULTICLASS)
        self.assertEqual(result.fold_scores, [100.0] * 5)
        self.assertEqual(result.mean_score, 100.0)

    def test_mean_metrics_and_run(self):
        result = cross_validate(stub_factory, {'mode': 'memorize'}, labelled_by_feature(), Scenario.BINARY, k=4)
        self.assertEqual(result.mean_metrics()['accuracy'], 1.0)

        cv_run = result.to_run('memorize', 'toy', Scenario.BINARY)
        self.assertEqual(cv_run.phase, Phase.CV)
        self.assertEqual(cv_run.fold_scores, [100.0] * 4)
        self.assertEqual(cv_run.config, {'mode': 'memorize'})

    def test_failing_fold_is_named(self):
        with self.assertRaises(TrainingError) as caught:
            cross_validate(stub_factory, {'mode': 'fail'}, labelled_by_feature(), Scenario.BINARY)
        self.assertEqual(caught.exception.fold_index, 0)
        self.assertIn('diverged', str(caught.exception))

    def test_concurrent_folds_agree(self):
        data = labelled_by_feature()
        first = cross_validate(stub_factory, {'mode': 'constant', 'label': 1}, data, Scenario.BINARY, seed=3)
        second = cross_validate(stub_factory, {'mode': 'constant', 'label': 1}, data, Scenario.BINARY, seed=3, jobs=3)
        self.assertEqual(first.fold_scores, second.fold_scores)


class GridTest(SimpleTestCase):

    def test_default_grid_sizes(self):
        train = with_ratio(192, 8)
        self.assertEqual(len(default_grid('svm', train)), 3)
        self.assertEqual(len(default_grid('xgboost', train)), 27)
        self.assertEqual(len(default_grid('lightgbm', train)), 27)
        self.assertEqual(len(default_grid('iforest', train)), 12)
        self.assertEqual(default_grid('drl', train).points, ({},))

    def test_dataset_ratio_is_added_once(self):
        iforest = default_grid('iforest', with_ratio(190, 10))
        self.assertEqual(sorted({point['contamination'] for point in iforest}), [0.001, 0.0255, 0.05])

        iforest = default_grid('iforest', with_ratio(192, 8))
        self.assertIn(0.04, {point['contamination'] for point in iforest})

    def test_lof_drops_infeasible_neighbourhoods(self):
        grid = default_grid('lof', with_ratio(192, 8), folds=5)
        self.assertEqual(sorted({point['k'] for point in grid}), [35, 100])
        self.assertEqual(len(grid), 8)
        self.assertEqual(sorted({point['k'] for point in grid.skipped}), [250, 520])

    def test_unsupported_requests(self):
        train = with_ratio(192, 8)
        with self.assertRaises(ConfigurationError):
            default_grid('knn', train)
        with self.assertRaises(ConfigurationError):
            default_grid('lof', train, Scenario.MULTICLASS)

    def test_overrides_replace_the_default(self):
        train = with_ratio(192, 8)
        grid = resolve_grid('svm', train, Scenario.BINARY, overrides={'svm': [{'c': 1.0}]})
        self.assertEqual(grid.points, ({'c': 1.0},))
        with self.assertRaises(ConfigurationError):
            GridSpec.from_points('knn', [{'k': 3}])
        with self.assertRaises(ConfigurationError):
            GridSpec(kind='svm', points=())


class GridSearchTest(SimpleTestCase):

    def test_best_point_wins(self):
        grid = GridSpec(kind='memorize', points=({'mode': 'constant'}, {'mode': 'memorize'}))
        result = grid_search(stub_factory, grid, labelled_by_feature(), Scenario.BINARY, jobs=2)

        self.assertEqual(result.best_config, {'mode': 'memorize'})
        self.assertEqual(result.best_score, 100.0)
        self.assertEqual([r.config for r in result.results], list(grid.points))

    def test_ties_go_to_the_first_point(self):
        grid = GridSpec(kind='constant', points=(
            {'mode': 'constant', 'label': 0},
            {'mode': 'constant', 'label': 1},
        ))
        result = grid_search(stub_factory, grid, labelled_by_feature(), Scenario.BINARY)
        self.assertEqual(result.best_config['label'], 0)


class FinalEvaluationTest(SimpleTestCase):

    def test_retrain_and_score(self):
        sink = []
        evaluation = labelled_by_feature(10, seed=5)
        result = final_evaluate(stub_factory, {'mode': 'memorize'}, labelled_by_feature(), evaluation,
                                Scenario.BINARY, dataset='toy', learner_sink=sink.append)

        self.assertEqual(result.key, ('memorize', 'toy', 'binary', 'eval'))
        self.assertEqual(result.score, 100.0)
        self.assertEqual(result.metrics['macro_f1'], 1.0)
        self.assertEqual(len(sink), 1)


class ComparisonTest(SimpleTestCase):

    def test_published_cells(self):
        self.assertEqual(PUBLISHED_SCORES.get('lightgbm', '34-1', Scenario.BINARY, Phase.EVAL), 99.76)
        self.assertEqual(PUBLISHED_SCORES.get('drl', '44-1', Scenario.BINARY, Phase.EVAL), 75.39)
        self.assertIsNone(PUBLISHED_SCORES.get('drl', '44-1', Scenario.BINARY, Phase.CV))
        self.assertIsNone(PUBLISHED_SCORES.get('lof', '34-1', Scenario.MULTICLASS, Phase.EVAL))

    def test_matched_missing_and_unknown_cells(self):
        produced = [run('lightgbm'), run('lof', scenario='multiclass', score=50.0)]
        rows = {(r.model, r.dataset, r.scenario, r.phase): r for r in compare_to_reference(produced, datasets=['34-1'])}

        matched = rows[('lightgbm', '34-1', 'binary', 'eval')]
        self.assertEqual(matched.status, DeltaStatus.MATCHED)
        self.assertAlmostEqual(matched.delta, -0.26)

        self.assertEqual(rows[('lof', '34-1', 'multiclass', 'eval')].status, DeltaStatus.NOT_IN_REFERENCE)
        self.assertIsNone(rows[('lof', '34-1', 'multiclass', 'eval')].delta)

        missing = rows[('svm', '34-1', 'binary', 'cv')]
        self.assertEqual(missing.status, DeltaStatus.MISSING_RUN)
        self.assertEqual(missing.published, 99.3)
        self.assertTrue(all(key[1] == '34-1' for key in rows))

    def test_delta_is_antisymmetric(self):
        ours = [run('svm', score=97.0), run('xgboost', score=90.25)]
        theirs = [run('svm', score=98.5), run('xgboost', score=90.0)]
        forward = compare_to_reference(ours, PublishedReference.from_runs(theirs))
        backward = compare_to_reference(theirs, PublishedReference.from_runs(ours))
        self.assertEqual([r.delta for r in forward], [-r.delta for r in backward])

    def test_later_duplicate_wins(self):
        with self.assertLogs('detector.harness.comparison', level='WARNING'):
            rows = compare_to_reference([run('svm', score=10.0), run('svm', score=20.0)], datasets=['34-1'])
        self.assertEqual([r.produced for r in rows if r.model == 'svm' and r.phase == 'eval'], [20.0])


def sample_runs():
    return [
        run('lightgbm', config={'n_estimators': 60, 'learning_rate': 0.04}, wall_time=1.5,
            metrics={'accuracy': 0.99, 'macro_f1': 0.995}),
        run('svm', phase='cv', score=97.25, config={'c': 0.01}, fold_scores=[96.5, 98.0, 97.25, 97.0, 97.5]),
        run('svm', dataset='1-1', scenario='multiclass', score=66.67),
    ]


class RunsFileTest(SimpleTestCase):

    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_runs_csv(sample_runs(), Path(tmp) / 'runs.csv')
            loaded = read_runs_csv(path)
        self.assertEqual(loaded, sort_runs(sample_runs()))

    def test_rows_follow_report_order(self):
        ordered = sort_runs(sample_runs())
        self.assertEqual([r.key for r in ordered], [
            ('svm', '34-1', 'binary', 'cv'),
            ('lightgbm', '34-1', 'binary', 'eval'),
            ('svm', '1-1', 'multiclass', 'eval'),
        ])

    def test_missing_file(self):
        with self.assertRaises(DatasetError):
            read_runs_csv('/nonexistent/runs.csv')


class ReportTest(SimpleTestCase):

    def test_identical_inputs_give_identical_files(self):
        runs = sample_runs()
        deltas = compare_to_reference(runs, datasets=['34-1', '1-1'])
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            written = render_report(runs, deltas, first)
            again = render_report(list(reversed(runs)), deltas, second)

            self.assertEqual(sorted(written), ['binary.svg', 'deltas.csv', 'multiclass.svg', 'report.md', 'runs.csv'])
            for name, path in written.items():
                self.assertEqual(path.read_bytes(), again[name].read_bytes(), name)

    def test_no_runs(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(DatasetError):
                render_report([], [], tmp)


class ExperimentTest(SimpleTestCase):

    def test_eligible_models(self):
        self.assertEqual(eligible_models(Scenario.BINARY), ['svm', 'xgboost', 'lightgbm', 'iforest', 'lof', 'drl'])
        self.assertEqual(eligible_models(Scenario.MULTICLASS), ['svm', 'xgboost', 'lightgbm', 'drl'])
        self.assertEqual(eligible_models(Scenario.BINARY, ['lof', 'svm']), ['svm', 'lof'])
        with self.assertRaises(ConfigurationError):
            eligible_models(Scenario.BINARY, ['knn'])

    def test_single_attack_capture_runs_binary_only(self):
        records = make_flows({None: 60, 'Okiru': 40})
        runner = ExperimentRunner(settings=HarnessSettings(), grid_overrides={'svm': [{'c': 0.1}]})

        with self.assertLogs('detector.harness.experiment', level='INFO'):
            runs = runner.run(records, 'toy', models=['svm'])

        self.assertEqual([r.key for r in runs], [('svm', 'toy', 'binary', 'cv'), ('svm', 'toy', 'binary', 'eval')])
        self.assertEqual(len(runs[0].fold_scores), 5)
        self.assertEqual(runs[1].config, {'c': 0.1})
        self.assertTrue(all(0.0 <= r.score <= 100.0 for r in runs))
