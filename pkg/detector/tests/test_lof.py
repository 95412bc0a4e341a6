import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from detector.exceptions import ConfigurationError, DimensionMismatchError
from detector.learners import LocalOutlierFactor, load_learner, save_learner
from detector.learners.lof import (
    DENSITY_SENTINEL,
    KDTree,
    fit_lof,
    kdtree_knn,
    local_reachability_density,
    lof_fit_predict,
    lof_score,
    lof_scores,
)


def brute_force_knn(points, query, k, exclude=None):
    distances = np.sqrt(((points - query) ** 2).sum(axis=1))
    order = [i for i in np.lexsort((np.arange(len(points)), distances)) if i != exclude]
    return [(int(i), float(distances[i])) for i in order[:k]]


def brute_force_lof(points, query, k, exclude=None):
    """Outlier factor computed directly from the definition."""
    def neighbours(p, exclude=None):
        return brute_force_knn(points, p, k, exclude)

    k_distance = [neighbours(points[i], i)[-1][1] for i in range(len(points))]

    def lrd(p, neighbourhood):
        reach = [max(k_distance[o], d) for o, d in neighbourhood]
        return len(reach) / sum(reach)

    densities = [lrd(points[i], neighbours(points[i], i)) for i in range(len(points))]
    neighbourhood = neighbours(query, exclude)
    return np.mean([densities[o] for o, _ in neighbourhood]) / lrd(query, neighbourhood)


class KDTreeTest(SimpleTestCase):

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(2024)
        for config in range(100):
            n = int(rng.integers(2, 200))
            dims = int(rng.integers(1, 7))
            layout = ('continuous', 'lattice', 'duplicates')[config % 3]
            if layout == 'continuous':
                points = rng.normal(size=(n, dims))
            elif layout == 'lattice':
                points = rng.integers(0, 4, size=(n, dims)).astype(float)
            else:
                base = rng.normal(size=(max(1, n // 4), dims))
                points = base[rng.integers(0, len(base), size=n)]
            tree = KDTree(points, leaf_size=int(rng.integers(1, 41)))

            for _ in range(5):
                exclude = int(rng.integers(n)) if rng.random() < 0.5 else None
                if exclude is not None:
                    query = points[exclude]
                elif layout == 'lattice':
                    query = rng.integers(0, 4, size=dims).astype(float)
                else:
                    query = rng.normal(size=dims)
                k = int(rng.integers(1, n - (exclude is not None) + 1))

                found = kdtree_knn(tree, query, k, exclude=exclude)
                expected = brute_force_knn(points, query, k, exclude)
                with self.subTest(config=config, layout=layout, k=k, exclude=exclude):
                    self.assertEqual([i for i, _ in found], [i for i, _ in expected])
                    self.assertTrue(np.allclose([d for _, d in found], [d for _, d in expected]))

    def test_blocked_batch_matches_single_queries(self):
        rng = np.random.default_rng(9)
        points = rng.integers(0, 5, size=(150, 2)).astype(float)
        tree = KDTree(points, leaf_size=8)
        exclude = np.arange(150)

        indices, distances = tree.query_batch(points, 6, exclude=exclude, block_size=16)

        self.assertEqual(indices.shape, (150, 6))
        for row in (0, 15, 16, 77, 149):
            single = kdtree_knn(tree, points[row], 6, exclude=row)
            self.assertEqual(indices[row].tolist(), [i for i, _ in single])
            self.assertTrue(np.allclose(distances[row], [d for _, d in single]))
        self.assertFalse((indices == exclude[:, None]).any())

    def test_excluded_point_is_never_returned(self):
        points = np.random.default_rng(1).normal(size=(40, 2))
        tree = KDTree(points, leaf_size=5)
        found = kdtree_knn(tree, points[3], 5, exclude=3)
        self.assertNotIn(3, [i for i, _ in found])
        expected = brute_force_knn(points, points[3], 5, exclude=3)
        self.assertEqual([i for i, _ in found], [i for i, _ in expected])

    def test_ties_go_to_the_lower_index(self):
        points = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
        found = kdtree_knn(KDTree(points, leaf_size=1), np.zeros(2), 2)
        self.assertEqual([i for i, _ in found], [0, 1])

    def test_k_out_of_range(self):
        tree = KDTree(np.zeros((3, 2)))
        with self.assertRaises(ConfigurationError):
            kdtree_knn(tree, np.zeros(2), 3, exclude=0)
        with self.assertRaises(ConfigurationError):
            kdtree_knn(tree, np.zeros(2), 0)


class LofScoreTest(SimpleTestCase):

    def test_center_of_unit_square(self):
        square = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        model = fit_lof(square, k=3, contamination=0.25)
        center = np.array([0.5, 0.5])

        self.assertAlmostEqual(lof_score(model, center), 1.0)
        self.assertAlmostEqual(lof_score(model, center), brute_force_lof(square, center, 3))

    def test_inside_a_regular_grid(self):
        grid = np.array([[x, y] for x in range(20) for y in range(20)], dtype=float)
        model = fit_lof(grid, k=4, contamination=0.05)
        self.assertAlmostEqual(lof_score(model, np.array([9.5, 9.5])), 1.0)

    def test_agrees_with_definition(self):
        points = np.random.default_rng(2).normal(size=(60, 2))
        model = fit_lof(points, k=5, contamination=0.1)
        for query in ([0.0, 0.0], [3.0, -1.0], [0.5, 2.5]):
            query = np.array(query)
            self.assertAlmostEqual(lof_score(model, query), brute_force_lof(points, query, 5))

    def test_planted_cluster_is_flagged(self):
        rng = np.random.default_rng(3)
        points = np.vstack([rng.normal(0.0, 1.0, size=(475, 2)), rng.normal((10.0, 10.0), 0.1, size=(25, 2))])

        model, flagged = lof_fit_predict(points, contamination=0.05, k=35)

        self.assertGreaterEqual(flagged[475:].mean(), 0.9)
        self.assertTrue(np.array_equal(flagged, (model.training_scores > model.score_threshold).astype(int)))

    def test_translation_and_scale_invariance(self):
        points = np.random.default_rng(4).normal(size=(80, 3))
        queries = np.random.default_rng(5).normal(size=(5, 3))
        base = lof_scores(fit_lof(points, k=6, contamination=0.05), queries)
        moved = lof_scores(fit_lof(points * 3.0 + 7.0, k=6, contamination=0.05), queries * 3.0 + 7.0)
        self.assertTrue(np.allclose(base, moved, rtol=1e-9))

    def test_duplicates_get_the_density_sentinel(self):
        points = np.vstack([np.zeros((5, 2)), np.array([[3.0, 3.0], [4.0, 3.0], [3.0, 4.0]])])
        model = fit_lof(points, k=2, contamination=0.1)
        self.assertEqual(model.lrd[0], DENSITY_SENTINEL)
        self.assertAlmostEqual(model.training_scores[0], 1.0)
        self.assertTrue(np.isfinite(model.training_scores).all())

    def test_density_of_a_point_beyond_a_collapsed_cluster(self):
        points = np.vstack([np.zeros((4, 2)), np.array([[50.0, 50.0]])])
        model = fit_lof(points, k=3, contamination=0.2)
        query = np.array([3.0, 4.0])

        self.assertAlmostEqual(local_reachability_density(model, query), 1 / 5)
        neighbors = model.tree.query_batch(query[None, :], 3)
        self.assertAlmostEqual(local_reachability_density(model, query, neighbors), 1 / 5)
        self.assertEqual(local_reachability_density(model, np.zeros(2)), DENSITY_SENTINEL)

    def test_batch_scores_match_single_scores(self):
        points = np.random.default_rng(8).normal(size=(120, 3))
        queries = np.random.default_rng(10).normal(size=(7, 3))
        model = fit_lof(points, k=8, contamination=0.05)

        batch = lof_scores(model, queries)
        self.assertTrue(np.allclose(batch, [lof_score(model, q) for q in queries]))
        self.assertTrue(np.allclose(model.training_scores[:3], [brute_force_lof(points, points[i], 8, exclude=i) for i in range(3)]))
        with self.assertRaises(DimensionMismatchError):
            lof_scores(model, np.zeros((2, 2)))

    def test_invalid_settings(self):
        points = np.random.default_rng(6).normal(size=(10, 2))
        with self.assertRaises(ConfigurationError):
            fit_lof(points, k=10, contamination=0.05)
        with self.assertRaises(ConfigurationError):
            fit_lof(points, k=3, contamination=0.7)

    def test_learner_round_trip(self):
        points = np.random.default_rng(7).normal(size=(100, 2))
        queries = np.array([[0.0, 0.0], [6.0, 6.0]])
        learner = LocalOutlierFactor(k=10, contamination=0.05).fit(points)
        self.assertEqual(learner.predict(queries).tolist(), [0, 1])

        with tempfile.TemporaryDirectory() as tmp:
            loaded = load_learner(save_learner(learner, Path(tmp) / 'lof.json'))
        self.assertTrue(np.allclose(lof_scores(loaded.model, queries), lof_scores(learner.model, queries)))
