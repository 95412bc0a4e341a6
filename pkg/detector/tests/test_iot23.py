"""
Reproduction checks on the IoT-23 captures.

Skipped unless FLOWSENTRY_IOT23_DIR points at a directory holding
``<capture>/conn.log.labeled`` for the captures below.
"""
from functools import lru_cache
from pathlib import Path
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from detector.flows import parse_conn_log_file, summarize_capture
from detector.harness import Phase, run_experiment
from detector.preprocessing import Scenario, carve_subsets

IOT23_DIR = Path(settings.FLOWSENTRY_IOT23_DIR) if settings.FLOWSENTRY_IOT23_DIR else None


def capture_path(name: str) -> Path:
    return IOT23_DIR / name / 'conn.log.labeled'


def has_capture(name: str) -> bool:
    return IOT23_DIR is not None and capture_path(name).is_file()


@lru_cache(maxsize=None)
def capture(name: str):
    return tuple(parse_conn_log_file(capture_path(name)))


def eval_scores(records, dataset: str, scenario: Scenario, models) -> dict:
    runs = run_experiment(list(records), dataset, scenarios=[scenario], models=models, seed=1)
    return {run.model: run.score for run in runs if run.phase == Phase.EVAL}


class CaptureCompositionTest(SimpleTestCase):

    @skipUnless(has_capture('42-1'), 'capture 42-1 not available')
    def test_42_1_matches_the_catalogue(self):
        summary = summarize_capture(capture('42-1'), '42-1')
        self.assertEqual(summary.total_samples, 4_427)
        self.assertEqual(summary.catalogue_differences(), {})


class BinaryReproductionTest(SimpleTestCase):

    @skipUnless(has_capture('42-1'), 'capture 42-1 not available')
    def test_42_1_supervised_models(self):
        scores = eval_scores(capture('42-1'), '42-1', Scenario.BINARY, ['svm', 'xgboost', 'lightgbm'])
        for model in ('svm', 'xgboost', 'lightgbm'):
            self.assertGreaterEqual(scores[model], 99.0, model)

    @skipUnless(has_capture('34-1'), 'capture 34-1 not available')
    def test_34_1_boosting_beats_isolation_forest(self):
        scores = eval_scores(capture('34-1'), '34-1', Scenario.BINARY, ['lightgbm', 'iforest'])
        self.assertGreaterEqual(scores['lightgbm'], 98.5)
        self.assertLess(scores['iforest'], scores['lightgbm'])

    @skipUnless(has_capture('20-1'), 'capture 20-1 not available')
    def test_20_1_isolation_forest(self):
        scores = eval_scores(capture('20-1'), '20-1', Scenario.BINARY, ['iforest'])
        self.assertGreaterEqual(scores['iforest'], 95.0)

    @skipUnless(has_capture('1-1'), 'capture 1-1 not available')
    def test_1_1_small_supervised_models(self):
        small = carve_subsets(capture('1-1'), seed=1)['1-1-small']
        models = ['svm', 'xgboost', 'lightgbm', 'drl']
        scores = eval_scores(small, '1-1-small', Scenario.BINARY, models)
        for model in models:
            self.assertGreaterEqual(scores[model], 99.5, model)


class MulticlassReproductionTest(SimpleTestCase):

    @skipUnless(has_capture('44-1'), 'capture 44-1 not available')
    def test_44_1(self):
        scores = eval_scores(capture('44-1'), '44-1', Scenario.MULTICLASS, ['svm', 'xgboost', 'lightgbm', 'drl'])
        for model in ('svm', 'xgboost', 'lightgbm'):
            self.assertGreaterEqual(scores[model], 98.0, model)
        self.assertGreaterEqual(scores['drl'], 80.0)
