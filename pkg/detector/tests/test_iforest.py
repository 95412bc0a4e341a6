import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from detector.exceptions import ConfigurationError, DimensionMismatchError
from detector.learners import IsolationForest, load_learner, save_learner
from detector.learners.iforest import (
    IForestConfig,
    anomaly_score,
    build_isolation_tree,
    expected_path_length_c,
    iforest_fit_predict,
)


def tree_depth(node) -> int:
    if node.is_external:
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


def planted_outliers(seed: int = 0):
    rng = np.random.default_rng(seed)
    normal = rng.normal(0.0, 0.5, size=(950, 2))
    outliers = rng.normal(8.0, 0.5, size=(50, 2))
    return np.vstack([normal, outliers]), np.r_[np.zeros(950, dtype=int), np.ones(50, dtype=int)]


class PathLengthTest(SimpleTestCase):

    def test_normalizer_values(self):
        self.assertEqual(expected_path_length_c(1), 0.0)
        self.assertAlmostEqual(expected_path_length_c(2), 0.15443, places=5)
        self.assertAlmostEqual(expected_path_length_c(256), 10.2448, places=4)

    def test_height_limit(self):
        rng = np.random.default_rng(1)
        tree = build_isolation_tree(rng.normal(size=(256, 3)), rng)
        self.assertEqual(tree.height_limit, 8)
        self.assertLessEqual(tree_depth(tree.root), 8)

    def test_identical_rows_stop_growth(self):
        tree = build_isolation_tree(np.ones((10, 2)), np.random.default_rng(1))
        self.assertTrue(tree.root.is_external)
        self.assertEqual(tree.root.size, 10)

    def test_split_values_lie_inside_the_range(self):
        rng = np.random.default_rng(2)
        sample = rng.uniform(size=(64, 2))
        stack = [(build_isolation_tree(sample, rng).root, sample)]
        while stack:
            node, rows = stack.pop()
            if node.is_external:
                self.assertEqual(node.size, rows.shape[0])
                continue
            column = rows[:, node.feature]
            self.assertTrue(column.min() < node.split <= column.max())
            goes_left = column < node.split
            stack.append((node.left, rows[goes_left]))
            stack.append((node.right, rows[~goes_left]))


class IsolationForestTest(SimpleTestCase):

    def test_planted_outliers_are_found(self):
        X, truth = planted_outliers()
        model, predicted = iforest_fit_predict(X, 0.05, IForestConfig(), seed=1)

        self.assertTrue(49 <= int(predicted.sum()) <= 51)
        recall = predicted[truth == 1].mean()
        self.assertGreaterEqual(recall, 0.9)

        scores = model.training_scores
        self.assertTrue(((scores > 0) & (scores < 1)).all())
        self.assertGreater(scores[truth == 1].mean(), scores[truth == 0].mean())

    def test_seeded_runs_agree(self):
        X, _ = planted_outliers(1)
        config = IForestConfig(n_estimators=20)
        first, _ = iforest_fit_predict(X, 0.05, config, seed=4)
        second, _ = iforest_fit_predict(X, 0.05, config, seed=4, jobs=3)
        self.assertTrue(np.array_equal(anomaly_score(first, X), anomaly_score(second, X)))

    def test_small_training_set_samples_with_replacement(self):
        X = np.random.default_rng(3).normal(size=(40, 2))
        model, _ = iforest_fit_predict(X, 0.1, IForestConfig(n_estimators=5, max_samples=100))
        self.assertEqual(model.trees[0].height_limit, 7)

    def test_invalid_settings(self):
        X, _ = planted_outliers()
        with self.assertRaises(ConfigurationError):
            iforest_fit_predict(X, 0.6)
        with self.assertRaises(ConfigurationError):
            IForestConfig(max_samples=1)

    def test_learner_ignores_labels_and_round_trips(self):
        X, truth = planted_outliers(2)
        learner = IsolationForest(n_estimators=30, max_samples=100, contamination=0.05).fit(X)
        predicted = learner.predict(X)
        self.assertGreaterEqual(predicted[truth == 1].mean(), 0.9)

        with tempfile.TemporaryDirectory() as tmp:
            loaded = load_learner(save_learner(learner, Path(tmp) / 'iforest.json'))
        self.assertTrue(np.array_equal(loaded.predict(X), predicted))
        with self.assertRaises(DimensionMismatchError):
            loaded.predict(np.zeros((1, 3)))
