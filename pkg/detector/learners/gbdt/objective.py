"""
Cross-entropy objective: link functions, gradients and loss.
"""
import numpy as np

PROBABILITY_CLAMP = 1e-15


def sigmoid(raw: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(raw, -500.0, 500.0)))


def softmax(raw: np.ndarray) -> np.ndarray:
    shifted = raw - raw.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def clamp(probabilities: np.ndarray) -> np.ndarray:
    return np.clip(probabilities, PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)


def one_hot(targets: np.ndarray, n_classes: int) -> np.ndarray:
    encoded = np.zeros((len(targets), n_classes))
    encoded[np.arange(len(targets)), targets] = 1.0
    return encoded


def logistic_gradients(predictions: np.ndarray, targets: np.ndarray):
    """
    First and second derivatives of cross-entropy w.r.t. the raw score.

    Args:
        predictions: Probabilities; 1-D for binary, (n, K) softmax outputs otherwise
        targets: 0/1 labels (binary) or class indices (multi-class)

    Returns:
        tuple: (g, h) shaped like ``predictions``
    """
    predictions = np.asarray(predictions, dtype=float)
    targets = np.asarray(targets)
    if predictions.ndim == 1:
        return predictions - targets, predictions * (1.0 - predictions)
    encoded = one_hot(targets, predictions.shape[1])
    return predictions - encoded, predictions * (1.0 - predictions)


def cross_entropy(predictions: np.ndarray, targets: np.ndarray) -> float:
    """Mean cross-entropy of probabilities against labels."""
    predictions = clamp(np.asarray(predictions, dtype=float))
    targets = np.asarray(targets)
    if predictions.ndim == 1:
        return float(-np.mean(targets * np.log(predictions) + (1 - targets) * np.log(1.0 - predictions)))
    return float(-np.mean(np.log(predictions[np.arange(len(targets)), targets])))
