"""
Common learner interface and registry.

Every detector exposes ``fit``/``predict`` over encoded feature matrices and
round-trips through a JSON document tagged with its ``kind`` so a saved model
can be loaded without knowing its type in advance.
"""
from abc import ABC, abstractmethod
import logging
from pathlib import Path
from typing import Dict, Optional, Type, Union

import numpy as np

from detector.exceptions import ConfigurationError, DimensionMismatchError, TrainingError
from detector.utils.serialization import read_json, write_json

logger = logging.getLogger(__name__)

LEARNERS: Dict[str, Type['Learner']] = {}


def register_learner(cls: Type['Learner']) -> Type['Learner']:
    """Class decorator adding a learner to ``LEARNERS`` under its kind."""
    LEARNERS[cls.kind] = cls
    return cls


class Learner(ABC):
    """
    Abstract base class for all detectors.

    Subclasses set ``kind`` (registry key), ``display_name`` (report label)
    and ``supervised``. Unsupervised learners ignore labels in ``fit`` and
    predict 1 for anomalies.

    Example:
        @register_learner
        class MyLearner(Learner):
            kind = 'mine'
            display_name = 'Mine'

            def _fit(self, X, y, n_classes):
                ...

            def _predict(self, X):
                ...
    """

    kind: str = ''
    display_name: str = ''
    supervised: bool = True
    multiclass_capable: bool = True

    def __init__(self, seed: int = 1, jobs: int = 1, **params):
        self.seed = seed
        self.jobs = jobs
        self.params = dict(params)
        self.n_features: Optional[int] = None
        self.n_classes: Optional[int] = None
        self.logger = logging.getLogger(f'detector.learners.{self.kind}')

    @property
    def is_fitted(self) -> bool:
        return self.n_features is not None

    def fit(self, X: np.ndarray, y: Optional[np.ndarray] = None, n_classes: Optional[int] = None) -> 'Learner':
        """
        Train on a feature matrix.

        Args:
            X: (n_rows, n_features) matrix
            y: Class index per row (ignored by unsupervised learners)
            n_classes: Size of the label space; inferred from ``y`` when omitted

        Returns:
            self
        """
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or not X.shape[0]:
            raise TrainingError("training matrix must be 2-D and non-empty")
        if self.supervised:
            if y is None:
                raise TrainingError(f"{self.display_name} needs labels")
            y = np.asarray(y, dtype=int)
            if n_classes is None:
                n_classes = max(int(y.max()) + 1, 2)
            if n_classes > 2 and not self.multiclass_capable:
                raise ConfigurationError(f"{self.display_name} supports only binary classification")
        self.n_features = X.shape[1]
        self.n_classes = n_classes or 2
        self._fit(X, y, self.n_classes)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Predict class indices (1 = anomaly for unsupervised learners)."""
        X = self._check_features(X)
        return self._predict(X)

    def _check_features(self, X: np.ndarray) -> np.ndarray:
        if not self.is_fitted:
            raise TrainingError(f"{self.display_name} has not been fitted")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.shape[1] != self.n_features:
            raise DimensionMismatchError(self.n_features, X.shape[1])
        return X

    @abstractmethod
    def _fit(self, X: np.ndarray, y: Optional[np.ndarray], n_classes: int) -> None:
        raise NotImplementedError(f"{self.__class__.__name__} must implement _fit()")

    @abstractmethod
    def _predict(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{self.__class__.__name__} must implement _predict()")

    @abstractmethod
    def model_to_dict(self) -> dict:
        """Fitted state as a JSON-compatible dict."""

    @abstractmethod
    def model_from_dict(self, data: dict) -> None:
        """Restore fitted state written by ``model_to_dict``."""

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'seed': self.seed,
            'params': self.params,
            'n_features': self.n_features,
            'n_classes': self.n_classes,
            'model': self.model_to_dict() if self.is_fitted else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Learner':
        learner = cls(seed=data.get('seed', 1), **data.get('params', {}))
        learner.n_features = data.get('n_features')
        learner.n_classes = data.get('n_classes')
        if data.get('model') is not None:
            learner.model_from_dict(data['model'])
        return learner

    def __str__(self) -> str:
        return f"{self.display_name}({self.params})"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} {self.params} at {hex(id(self))}>"


def create_learner(kind: str, seed: int = 1, **params) -> Learner:
    """
    Instantiate a registered learner.

    Raises:
        ConfigurationError: Unknown kind
    """
    try:
        cls = LEARNERS[kind]
    except KeyError:
        raise ConfigurationError(f"unknown model {kind!r}; expected one of {', '.join(sorted(LEARNERS))}")
    return cls(seed=seed, **params)


def save_learner(learner: Learner, path: Union[str, Path]) -> Path:
    """Persist a fitted learner as JSON."""
    path = write_json(path, learner.to_dict())
    logger.info(f"Saved {learner.display_name} model to {path}")
    return path


def load_learner(path: Union[str, Path]) -> Learner:
    """
    Load any learner saved by ``save_learner``.

    Raises:
        ConfigurationError: Missing file or unknown kind
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"model file not found: {path}")
    data = read_json(path)
    kind = data.get('kind')
    if kind not in LEARNERS:
        raise ConfigurationError(f"{path}: unknown model kind {kind!r}")
    return LEARNERS[kind].from_dict(data)
