"""
Isolation Forest.

Anomalies are isolated by fewer random axis-aligned cuts than normal points;
scores follow ``s = 2 ** (-E[h(x)] / c(psi))``.
"""
from dataclasses import dataclass, field
import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from detector.exceptions import ConfigurationError, DimensionMismatchError
from detector.utils.concurrency import run_jobs
from .base import Learner, register_learner

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.5772156649
MAX_CONTAMINATION = 0.5


def expected_path_length_c(n: int) -> float:
    """Average unsuccessful-search path length of a binary search tree with ``n`` nodes."""
    if n <= 1:
        return 0.0
    return 2.0 * (math.log(n - 1) + EULER_GAMMA) - 2.0 * (n - 1) / n


@dataclass
class IsolationNode:
    """Internal node (feature, split) or external node (size)."""
    size: int = 0
    feature: Optional[int] = None
    split: Optional[float] = None
    left: Optional['IsolationNode'] = None
    right: Optional['IsolationNode'] = None

    @property
    def is_external(self) -> bool:
        return self.feature is None

    def to_dict(self) -> dict:
        if self.is_external:
            return {'size': self.size}
        return {'feature': self.feature, 'split': self.split, 'left': self.left.to_dict(), 'right': self.right.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> 'IsolationNode':
        if 'feature' not in data:
            return cls(size=int(data['size']))
        return cls(
            feature=int(data['feature']),
            split=float(data['split']),
            left=cls.from_dict(data['left']),
            right=cls.from_dict(data['right']),
        )


@dataclass
class IsolationTree:
    root: IsolationNode
    height_limit: int


@dataclass(frozen=True)
class IForestConfig:
    n_estimators: int = 100
    max_samples: int = 250
    max_features: float = 1.0

    def __post_init__(self):
        if self.n_estimators < 1:
            raise ConfigurationError("n_estimators must be >= 1")
        if self.max_samples < 2:
            raise ConfigurationError(f"max_samples must be >= 2, got {self.max_samples}")
        if self.max_features != 1.0:
            raise ConfigurationError("isolation trees always consider every feature")


@dataclass
class IForestModel:
    trees: List[IsolationTree]
    max_samples: int
    contamination: float
    n_features: int
    score_threshold: float = 0.5
    training_scores: Optional[np.ndarray] = field(default=None, repr=False)


def _split_node(sample: np.ndarray, depth: int, height_limit: int, rng: np.random.Generator) -> IsolationNode:
    n = sample.shape[0]
    if depth >= height_limit or n <= 1:
        return IsolationNode(size=n)
    low, high = sample.min(axis=0), sample.max(axis=0)
    splittable = np.flatnonzero(low < high)
    if not splittable.size:
        return IsolationNode(size=n)

    feature = int(splittable[rng.integers(splittable.size)])
    split = rng.uniform(low[feature], high[feature])
    while split <= low[feature]:
        split = rng.uniform(low[feature], high[feature])
    goes_left = sample[:, feature] < split
    return IsolationNode(
        size=n,
        feature=feature,
        split=float(split),
        left=_split_node(sample[goes_left], depth + 1, height_limit, rng),
        right=_split_node(sample[~goes_left], depth + 1, height_limit, rng),
    )


def build_isolation_tree(sample: np.ndarray, rng: np.random.Generator, height_limit: Optional[int] = None) -> IsolationTree:
    """
    Grow one isolation tree on a subsample.

    Cuts pick a random feature that is not constant at the node and a split
    value strictly inside its range. Growth stops at the height limit
    (``ceil(log2(psi))`` by default), at single rows, or at identical rows.
    """
    if height_limit is None:
        height_limit = math.ceil(math.log2(max(sample.shape[0], 2)))
    return IsolationTree(root=_split_node(sample, 0, height_limit, rng), height_limit=height_limit)


def path_lengths(tree: IsolationTree, X: np.ndarray) -> np.ndarray:
    """Path length of every row, adjusted by c(size) at the external node."""
    out = np.empty(X.shape[0])
    stack = [(tree.root, np.arange(X.shape[0]), 0)]
    while stack:
        node, rows, depth = stack.pop()
        if not rows.size:
            continue
        if node.is_external:
            out[rows] = depth + expected_path_length_c(node.size)
            continue
        goes_left = X[rows, node.feature] < node.split
        stack.append((node.left, rows[goes_left], depth + 1))
        stack.append((node.right, rows[~goes_left], depth + 1))
    return out


def anomaly_score(model: IForestModel, X: np.ndarray) -> np.ndarray:
    """Scores in (0, 1); higher means more anomalous."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != model.n_features:
        raise DimensionMismatchError(model.n_features, X.shape[1])
    mean_path = np.mean([path_lengths(tree, X) for tree in model.trees], axis=0)
    normalizer = expected_path_length_c(model.max_samples)
    return np.power(2.0, -mean_path / normalizer)


def _check_contamination(contamination: float):
    if not 0.0 < contamination <= MAX_CONTAMINATION:
        raise ConfigurationError(f"contamination must lie in (0, {MAX_CONTAMINATION}], got {contamination}")


def iforest_fit_predict(
    train: np.ndarray,
    contamination: float,
    config: IForestConfig = IForestConfig(),
    seed: int = 1,
    jobs: int = 1,
) -> Tuple[IForestModel, np.ndarray]:
    """
    Fit a forest and flag the top ``contamination`` share of training rows.

    Each tree draws ``max_samples`` rows without replacement (with
    replacement only when ``max_samples`` exceeds the training size). The
    threshold is the ``1 - contamination`` quantile of training scores.

    Returns:
        tuple: (IForestModel, 0/1 predictions for the training rows)
    """
    _check_contamination(contamination)
    train = np.asarray(train, dtype=float)
    n = train.shape[0]
    psi = config.max_samples
    sequences = np.random.SeedSequence(seed).spawn(config.n_estimators)

    def fit_tree(sequence):
        rng = np.random.default_rng(sequence)
        rows = rng.choice(n, size=psi, replace=psi > n)
        return build_isolation_tree(train[rows], rng, height_limit=math.ceil(math.log2(psi)))

    model = IForestModel(
        trees=run_jobs(fit_tree, sequences, jobs),
        max_samples=psi,
        contamination=contamination,
        n_features=train.shape[1],
    )
    scores = anomaly_score(model, train)
    model.score_threshold = float(np.quantile(scores, 1.0 - contamination))
    model.training_scores = scores
    logger.debug(f"Isolation forest threshold {model.score_threshold:.4f} at contamination {contamination}")
    return model, (scores > model.score_threshold).astype(int)


@register_learner
class IsolationForest(Learner):
    """Unsupervised isolation-forest detector."""

    kind = 'iforest'
    display_name = 'iForest'
    supervised = False
    multiclass_capable = False

    def __init__(self, seed: int = 1, max_samples: int = 250, contamination: float = 0.05,
                 n_estimators: int = 100, jobs: int = 1, **params):
        super().__init__(seed=seed, jobs=jobs, max_samples=max_samples, contamination=contamination,
                         n_estimators=n_estimators, **params)
        self.model: Optional[IForestModel] = None

    def _fit(self, X, y, n_classes):
        config = IForestConfig(n_estimators=int(self.params['n_estimators']), max_samples=int(self.params['max_samples']))
        self.model, _ = iforest_fit_predict(X, float(self.params['contamination']), config, self.seed, self.jobs)

    def _predict(self, X):
        return (anomaly_score(self.model, X) > self.model.score_threshold).astype(int)

    def model_to_dict(self) -> dict:
        return {
            'trees': [{'root': tree.root.to_dict(), 'height_limit': tree.height_limit} for tree in self.model.trees],
            'max_samples': self.model.max_samples,
            'contamination': self.model.contamination,
            'n_features': self.model.n_features,
            'score_threshold': self.model.score_threshold,
        }

    def model_from_dict(self, data: dict) -> None:
        self.model = IForestModel(
            trees=[IsolationTree(IsolationNode.from_dict(t['root']), int(t['height_limit'])) for t in data['trees']],
            max_samples=int(data['max_samples']),
            contamination=float(data['contamination']),
            n_features=int(data['n_features']),
            score_threshold=float(data['score_threshold']),
        )
