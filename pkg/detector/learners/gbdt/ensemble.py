"""
Boosting loop, prediction and the two boosted-tree learners.
"""
from dataclasses import dataclass, field
import logging
from typing import List, Optional, Tuple

import numpy as np

from detector.exceptions import DimensionMismatchError, TrainingError
from detector.learners.base import Learner, register_learner
from detector.utils.concurrency import run_jobs
from .config import GOSS, GbdtConfig, leaf_wise_config, level_wise_config
from .goss import goss_sample
from .objective import clamp, cross_entropy, logistic_gradients, sigmoid, softmax
from .tree import TreeNode, grow_tree, predict_tree

logger = logging.getLogger(__name__)


@dataclass
class GbdtEnsemble:
    """
    Fitted boosting rounds.

    Attributes:
        rounds: One list of trees per round (one tree for binary, one per class otherwise)
        n_classes: Label-space size
        n_features: Training feature count
        config: Configuration the ensemble was grown with
        base_score: Initial raw score (log-odds)
        loss_history: Training cross-entropy before the first round and after each round
    """
    rounds: List[List[TreeNode]]
    n_classes: int
    n_features: int
    config: GbdtConfig
    base_score: float = 0.0
    loss_history: List[float] = field(default_factory=list)

    @property
    def trees(self) -> List[TreeNode]:
        return [tree for trees in self.rounds for tree in trees]

    @property
    def n_outputs(self) -> int:
        return 1 if self.n_classes == 2 else self.n_classes

    def raw_scores(self, X: np.ndarray) -> np.ndarray:
        raw = np.full((X.shape[0], self.n_outputs), self.base_score)
        for trees in self.rounds:
            for k, tree in enumerate(trees):
                raw[:, k] += predict_tree(tree, X)
        return raw

    def to_dict(self) -> dict:
        return {
            'rounds': [[tree.to_dict() for tree in trees] for trees in self.rounds],
            'n_classes': self.n_classes,
            'n_features': self.n_features,
            'config': self.config.to_dict(),
            'base_score': self.base_score,
            'loss_history': self.loss_history,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'GbdtEnsemble':
        return cls(
            rounds=[[TreeNode.from_dict(tree) for tree in trees] for trees in data['rounds']],
            n_classes=int(data['n_classes']),
            n_features=int(data['n_features']),
            config=GbdtConfig.from_dict(data['config']),
            base_score=float(data.get('base_score', 0.0)),
            loss_history=list(data.get('loss_history', [])),
        )


def _probabilities(raw: np.ndarray) -> np.ndarray:
    if raw.shape[1] == 1:
        positive = clamp(sigmoid(raw[:, 0]))
        return np.column_stack([1.0 - positive, positive])
    return softmax(raw)


def gbdt_train(
    X: np.ndarray,
    y: np.ndarray,
    config: GbdtConfig,
    seed: int = 1,
    n_classes: Optional[int] = None,
    jobs: int = 1,
) -> GbdtEnsemble:
    """
    Boost ``config.n_estimators`` rounds of trees on cross-entropy.

    Each round draws its randomness from a seed sequence keyed by the round
    index: one child stream for GOSS and one per output tree for feature
    subsampling, so the per-tree streams do not depend on the split method.

    Raises:
        TrainingError: Fewer than two classes present
    """
    y = np.asarray(y, dtype=int)
    if np.unique(y).size < 2:
        raise TrainingError("boosting needs at least two classes")
    n_classes = n_classes or max(int(y.max()) + 1, 2)
    method = config.resolve_split_method(X.shape[0])

    ensemble = GbdtEnsemble(rounds=[], n_classes=n_classes, n_features=X.shape[1], config=config)
    raw = np.full((X.shape[0], ensemble.n_outputs), ensemble.base_score)

    def loss() -> float:
        probabilities = _probabilities(raw)
        if n_classes == 2:
            return cross_entropy(probabilities[:, 1], y)
        return cross_entropy(probabilities, y)

    ensemble.loss_history.append(loss())
    for round_index in range(config.n_estimators):
        goss_sequence, *tree_sequences = np.random.SeedSequence([seed, round_index]).spawn(1 + ensemble.n_outputs)

        probabilities = _probabilities(raw)
        if n_classes == 2:
            g, h = logistic_gradients(probabilities[:, 1], y)
            g, h = g.reshape(-1, 1), h.reshape(-1, 1)
        else:
            g, h = logistic_gradients(probabilities, y)

        rows, weights = np.arange(X.shape[0]), np.ones(X.shape[0])
        if method == GOSS:
            rows, weights = goss_sample(
                np.abs(g).sum(axis=1), config.goss_a, config.goss_b, np.random.default_rng(goss_sequence),
            )
        X_round = X[rows]

        def fit_output(k):
            return grow_tree(
                X_round, g[rows, k] * weights, h[rows, k] * weights, config,
                np.random.default_rng(tree_sequences[k]), method,
            )

        trees = run_jobs(fit_output, range(ensemble.n_outputs), jobs)
        for k, tree in enumerate(trees):
            raw[:, k] += predict_tree(tree, X)
        ensemble.rounds.append(trees)
        ensemble.loss_history.append(loss())

        if round_index % 10 == 0:
            logger.debug(f"Boosting round {round_index}: loss {ensemble.loss_history[-1]:.6f}",
                         extra={'round': round_index})

    return ensemble


def gbdt_predict(ensemble: GbdtEnsemble, X: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Class probabilities and predicted class indices.

    Returns:
        tuple: ((n, n_classes) probabilities, class indices with lowest-index tie-break)
    """
    if X.shape[1] != ensemble.n_features:
        raise DimensionMismatchError(ensemble.n_features, X.shape[1])
    probabilities = _probabilities(ensemble.raw_scores(X))
    return probabilities, np.argmax(probabilities, axis=1)


class BoostedTrees(Learner):
    """Boosted-tree learner; subclasses fix the growth strategy."""

    def __init__(self, seed: int = 1, jobs: int = 1, **params):
        super().__init__(seed=seed, jobs=jobs, **params)
        self.ensemble: Optional[GbdtEnsemble] = None

    def build_config(self) -> GbdtConfig:
        raise NotImplementedError(f"{self.__class__.__name__} must implement build_config()")

    def _fit(self, X, y, n_classes):
        config = self.build_config()
        self.ensemble = gbdt_train(X, y, config, seed=self.seed, n_classes=n_classes, jobs=self.jobs)
        self.logger.debug(
            f"{self.display_name} fitted: {len(self.ensemble.trees)} trees, "
            f"split method {config.resolve_split_method(X.shape[0])}"
        )

    def _predict(self, X):
        return gbdt_predict(self.ensemble, X)[1]

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return gbdt_predict(self.ensemble, self._check_features(X))[0]

    @property
    def loss_history(self) -> List[float]:
        return self.ensemble.loss_history if self.ensemble else []

    def model_to_dict(self) -> dict:
        return self.ensemble.to_dict()

    def model_from_dict(self, data: dict) -> None:
        self.ensemble = GbdtEnsemble.from_dict(data)


@register_learner
class LevelWiseBoosting(BoostedTrees):
    """Level-wise trees with exact or histogram split search."""

    kind = 'xgboost'
    display_name = 'XGBoost'

    def build_config(self) -> GbdtConfig:
        return level_wise_config(**self.params)


@register_learner
class LeafWiseBoosting(BoostedTrees):
    """Best-first leaf-wise trees on GOSS samples."""

    kind = 'lightgbm'
    display_name = 'LightGBM'

    def build_config(self) -> GbdtConfig:
        return leaf_wise_config(**self.params)
