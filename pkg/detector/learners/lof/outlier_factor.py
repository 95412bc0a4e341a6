"""
Local Outlier Factor in novelty mode.

Training fixes every point's k-distance and local reachability density;
queries are scored against those training neighbourhoods only.
"""
from dataclasses import dataclass, field
import logging
from typing import Optional, Tuple

import numpy as np

from detector.exceptions import ConfigurationError, DimensionMismatchError
from detector.learners.base import Learner, register_learner
from .kdtree import DEFAULT_LEAF_SIZE, KDTree

logger = logging.getLogger(__name__)

DENSITY_SENTINEL = 1e9
MAX_CONTAMINATION = 0.5


@dataclass
class LofModel:
    """
    Fitted novelty detector.

    Attributes:
        points: Training points
        k: Neighbour count
        tree: k-d tree over ``points``
        k_distances: Distance of each training point to its k-th neighbour
        lrd: Local reachability density of each training point
        score_threshold: Scores above it are anomalies
    """
    points: np.ndarray
    k: int
    tree: KDTree
    k_distances: np.ndarray
    lrd: np.ndarray
    contamination: float
    score_threshold: float = 1.0
    training_scores: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def n_features(self) -> int:
        return self.points.shape[1]


def reachability_densities(k_distances: np.ndarray, neighbor_indices: np.ndarray, neighbor_distances: np.ndarray) -> np.ndarray:
    """
    ``k / sum(max(k_distance(o), d(p, o)))`` over the neighbours ``o`` of each ``p``.

    Rows whose reach distances are all zero get ``DENSITY_SENTINEL``.
    """
    totals = np.maximum(k_distances[neighbor_indices], neighbor_distances).sum(axis=1)
    densities = np.full(totals.shape, DENSITY_SENTINEL)
    np.divide(neighbor_indices.shape[1], totals, out=densities, where=totals > 0)
    return densities


def local_reachability_density(
    model: LofModel,
    point: np.ndarray,
    neighbors: Optional[Tuple[np.ndarray, np.ndarray]] = None,
) -> float:
    """
    Local reachability density of one point against the training neighbourhoods.

    ``neighbors`` is an ``(indices, distances)`` pair from the model's tree;
    it is looked up when omitted.
    """
    if neighbors is None:
        indices, distances = model.tree.query_batch(np.atleast_2d(np.asarray(point, dtype=float)), model.k)
    else:
        indices, distances = (np.atleast_2d(np.asarray(part)) for part in neighbors)
    return float(reachability_densities(model.k_distances, indices.astype(int), distances.astype(float))[0])


def _scores(model: LofModel, neighbor_indices: np.ndarray, neighbor_distances: np.ndarray) -> np.ndarray:
    densities = reachability_densities(model.k_distances, neighbor_indices, neighbor_distances)
    return model.lrd[neighbor_indices].mean(axis=1) / densities


def lof_scores(model: LofModel, X: np.ndarray) -> np.ndarray:
    """Outlier factors of new points against the training neighbourhoods."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != model.n_features:
        raise DimensionMismatchError(model.n_features, X.shape[1])
    indices, distances = model.tree.query_batch(X, model.k)
    return _scores(model, indices, distances)


def lof_score(model: LofModel, query: np.ndarray) -> float:
    """Outlier factor of a single new point."""
    return float(lof_scores(model, query)[0])


def fit_lof(train: np.ndarray, k: int, contamination: float, leaf_size: int = DEFAULT_LEAF_SIZE) -> LofModel:
    """
    Index the training points and compute their densities and scores.

    A training point is never its own neighbour.

    Raises:
        ConfigurationError: contamination outside (0, 0.5] or k > n - 1
    """
    if not 0.0 < contamination <= MAX_CONTAMINATION:
        raise ConfigurationError(f"contamination must lie in (0, {MAX_CONTAMINATION}], got {contamination}")
    train = np.asarray(train, dtype=float)
    n = train.shape[0]
    if not 1 <= k <= n - 1:
        raise ConfigurationError(f"k={k} needs at least {k + 1} training rows, got {n}")

    tree = KDTree(train, leaf_size=leaf_size)
    indices, distances = tree.query_batch(train, k, exclude=np.arange(n))
    k_distances = distances[:, -1]

    model = LofModel(
        points=train,
        k=k,
        tree=tree,
        k_distances=k_distances,
        lrd=reachability_densities(k_distances, indices, distances),
        contamination=contamination,
    )
    scores = _scores(model, indices, distances)
    model.training_scores = scores
    model.score_threshold = float(np.quantile(scores, 1.0 - contamination))
    logger.debug(f"LOF fitted on {n} points, k={k}, threshold {model.score_threshold:.4f}")
    return model


def lof_fit_predict(train: np.ndarray, contamination: float, k: int, seed: int = 1) -> Tuple[LofModel, np.ndarray]:
    """
    Fit and flag the training rows above the ``1 - contamination`` score quantile.

    LOF is deterministic; ``seed`` is accepted for interface symmetry.
    """
    model = fit_lof(train, k, contamination)
    return model, (model.training_scores > model.score_threshold).astype(int)


@register_learner
class LocalOutlierFactor(Learner):
    """Unsupervised LOF novelty detector."""

    kind = 'lof'
    display_name = 'LOF'
    supervised = False
    multiclass_capable = False

    def __init__(self, seed: int = 1, k: int = 35, contamination: float = 0.05, **params):
        super().__init__(seed=seed, k=k, contamination=contamination, **params)
        self.model: Optional[LofModel] = None

    def _fit(self, X, y, n_classes):
        self.model, _ = lof_fit_predict(X, float(self.params['contamination']), int(self.params['k']), self.seed)

    def _predict(self, X):
        return (lof_scores(self.model, X) > self.model.score_threshold).astype(int)

    def model_to_dict(self) -> dict:
        return {
            'points': self.model.points,
            'k': self.model.k,
            'k_distances': self.model.k_distances,
            'lrd': self.model.lrd,
            'contamination': self.model.contamination,
            'score_threshold': self.model.score_threshold,
        }

    def model_from_dict(self, data: dict) -> None:
        points = np.asarray(data['points'], dtype=float)
        self.model = LofModel(
            points=points,
            k=int(data['k']),
            tree=KDTree(points),
            k_distances=np.asarray(data['k_distances'], dtype=float),
            lrd=np.asarray(data['lrd'], dtype=float),
            contamination=float(data['contamination']),
            score_threshold=float(data['score_threshold']),
        )
