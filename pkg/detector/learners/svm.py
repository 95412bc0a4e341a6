"""
Primal linear SVM with squared hinge loss and One-vs-All multi-class.

Minimizes ``0.5 * ||w||^2 + C * sum(max(0, 1 - y * (w.x + b))^2)`` by full-batch
gradient descent with a backtracking line search.
"""
from dataclasses import dataclass, field
import logging
from typing import List, Optional, Tuple

import numpy as np

from detector.exceptions import ConfigurationError, DimensionMismatchError, TrainingError
from detector.utils.concurrency import run_jobs
from .base import Learner, register_learner

logger = logging.getLogger(__name__)

TOLERANCE = 1e-6
MAX_ITERATIONS = 10_000
ARMIJO = 0.5
MIN_STEP = 1e-20


@dataclass
class LinearSvmModel:
    """
    One weight vector and bias per binary problem.

    A binary model holds a single row (class 1 positive); a One-vs-All model
    holds one row per class.
    """
    weights: np.ndarray
    biases: np.ndarray
    c_value: float
    one_vs_all: bool = False
    objective_history: List[List[float]] = field(default_factory=list)

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        return X @ self.weights.T + self.biases


def _objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, c: float) -> float:
    margins = np.maximum(0.0, 1.0 - y * (X @ w + b))
    return 0.5 * float(w @ w) + c * float(margins @ margins)


def _gradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, c: float) -> Tuple[np.ndarray, float]:
    margins = np.maximum(0.0, 1.0 - y * (X @ w + b))
    coefficient = -2.0 * c * margins * y
    return w + X.T @ coefficient, float(coefficient.sum())


def train_linear_svm(
    X: np.ndarray,
    y: np.ndarray,
    c: float,
    tolerance: float = TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> Tuple[np.ndarray, float, List[float]]:
    """
    Fit a binary squared-hinge SVM in the primal.

    Args:
        X: Feature matrix
        y: Labels in {-1, +1}
        c: Regularization strength (inverse of regularization)

    Returns:
        tuple: (weights, bias, objective per iteration)

    Raises:
        ConfigurationError: c <= 0
        TrainingError: Only one label sign present
    """
    if c <= 0:
        raise ConfigurationError(f"C must be positive, got {c}")
    y = np.asarray(y, dtype=float)
    if not ((y > 0).any() and (y < 0).any()):
        raise TrainingError("linear SVM needs samples of both signs")

    w = np.zeros(X.shape[1])
    b = 0.0
    objective = _objective(w, b, X, y, c)
    history = [objective]
    step = 1.0

    for _ in range(max_iterations):
        grad_w, grad_b = _gradient(w, b, X, y, c)
        grad_norm_sq = float(grad_w @ grad_w) + grad_b * grad_b
        if np.sqrt(grad_norm_sq) < tolerance:
            break

        step = min(step * 2.0, 1.0)
        while True:
            candidate_w = w - step * grad_w
            candidate_b = b - step * grad_b
            candidate = _objective(candidate_w, candidate_b, X, y, c)
            if candidate <= objective - ARMIJO * step * grad_norm_sq or step < MIN_STEP:
                break
            step *= 0.5
        if step < MIN_STEP:
            break

        w, b, objective = candidate_w, candidate_b, candidate
        history.append(objective)

    return w, b, history


def train_ova(X: np.ndarray, y: np.ndarray, c: float, n_classes: int, jobs: int = 1) -> LinearSvmModel:
    """
    One binary SVM per class, that class positive.

    Raises:
        TrainingError: A class has no samples
    """
    if n_classes < 2:
        raise TrainingError("One-vs-All needs at least two classes")
    counts = np.bincount(y, minlength=n_classes)
    empty = [str(k) for k in range(n_classes) if counts[k] == 0]
    if empty:
        raise TrainingError(f"classes without samples: {', '.join(empty)}")

    def fit_class(k):
        return train_linear_svm(X, np.where(y == k, 1.0, -1.0), c)

    fitted = run_jobs(fit_class, range(n_classes), jobs)
    return LinearSvmModel(
        weights=np.vstack([w for w, _, _ in fitted]),
        biases=np.array([b for _, b, _ in fitted]),
        c_value=c,
        one_vs_all=True,
        objective_history=[history for _, _, history in fitted],
    )


def svm_predict(model: LinearSvmModel, X: np.ndarray) -> np.ndarray:
    """
    Binary: 1 where w.x + b > 0 (ties go to class 0). One-vs-All: argmax,
    lowest index on ties.
    """
    if X.shape[1] != model.n_features:
        raise DimensionMismatchError(model.n_features, X.shape[1])
    scores = model.decision_function(X)
    if model.one_vs_all:
        return np.argmax(scores, axis=1)
    return (scores[:, 0] > 0).astype(int)


@register_learner
class LinearSvm(Learner):
    """Linear-kernel, squared-hinge, primal SVM."""

    kind = 'svm'
    display_name = 'SVM'

    def __init__(self, seed: int = 1, c: float = 0.1, jobs: int = 1, **params):
        super().__init__(seed=seed, jobs=jobs, c=c, **params)
        self.model: Optional[LinearSvmModel] = None

    def _fit(self, X, y, n_classes):
        c = float(self.params['c'])
        if n_classes == 2:
            w, b, history = train_linear_svm(X, np.where(y == 1, 1.0, -1.0), c)
            self.model = LinearSvmModel(
                weights=w.reshape(1, -1), biases=np.array([b]), c_value=c, objective_history=[history],
            )
        else:
            self.model = train_ova(X, y, c, n_classes, jobs=self.jobs)
        self.logger.debug(f"SVM fitted with C={c}, {len(self.model.objective_history[0])} iterations")

    def _predict(self, X):
        return svm_predict(self.model, X)

    @property
    def objective_history(self) -> List[List[float]]:
        return self.model.objective_history if self.model else []

    def model_to_dict(self) -> dict:
        return {
            'weights': self.model.weights,
            'biases': self.model.biases,
            'c_value': self.model.c_value,
            'one_vs_all': self.model.one_vs_all,
        }

    def model_from_dict(self, data: dict) -> None:
        self.model = LinearSvmModel(
            weights=np.asarray(data['weights'], dtype=float),
            biases=np.asarray(data['biases'], dtype=float),
            c_value=float(data['c_value']),
            one_vs_all=bool(data['one_vs_all']),
        )
