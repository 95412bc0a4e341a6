"""
Split scoring and search.

Rows go to the left child when ``x[feature] < threshold``.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import EXACT, GOSS, HISTOGRAM


@dataclass(frozen=True)
class SplitCandidate:
    feature: int
    threshold: float
    gain: float


def split_gain(GL: float, HL: float, GR: float, HR: float, l2_lambda: float, gamma: float) -> float:
    """Loss reduction of splitting a node into (GL, HL) and (GR, HR), minus gamma."""
    return 0.5 * (
        GL * GL / (HL + l2_lambda)
        + GR * GR / (HR + l2_lambda)
        - (GL + GR) ** 2 / (HL + HR + l2_lambda)
    ) - gamma


def leaf_value(G: float, H: float, l2_lambda: float, learning_rate: float = 1.0) -> float:
    """Newton step of a leaf, scaled by the learning rate."""
    return -learning_rate * G / (H + l2_lambda)


def _vector_gain(GL, HL, GR, HR, l2_lambda, gamma):
    return 0.5 * (GL ** 2 / (HL + l2_lambda) + GR ** 2 / (HR + l2_lambda)
                  - (GL + GR) ** 2 / (HL + HR + l2_lambda)) - gamma


def _exact_candidates(column: np.ndarray, g: np.ndarray, h: np.ndarray):
    order = np.argsort(column, kind='stable')
    values = column[order]
    boundaries = np.flatnonzero(values[:-1] < values[1:])
    if not boundaries.size:
        return None
    GL = np.cumsum(g[order])[boundaries]
    HL = np.cumsum(h[order])[boundaries]
    count_left = boundaries + 1
    low, high = values[boundaries], values[boundaries + 1]
    midpoint = (low + high) / 2.0
    thresholds = np.where(midpoint > low, midpoint, high)
    return thresholds, GL, HL, count_left


def _histogram_candidates(column: np.ndarray, g: np.ndarray, h: np.ndarray, bins: int):
    low, high = float(column.min()), float(column.max())
    if low == high:
        return None
    edges = np.linspace(low, high, bins + 1)
    inner = edges[1:-1]
    index = np.searchsorted(inner, column, side='right')
    G_bins = np.bincount(index, weights=g, minlength=bins)
    H_bins = np.bincount(index, weights=h, minlength=bins)
    n_bins = np.bincount(index, minlength=bins)
    GL = np.cumsum(G_bins)[:-1]
    HL = np.cumsum(H_bins)[:-1]
    count_left = np.cumsum(n_bins)[:-1]
    keep = (count_left > 0) & (count_left < column.size)
    if not keep.any():
        return None
    return inner[keep], GL[keep], HL[keep], count_left[keep]


def find_best_split(
    X: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    features: Sequence[int],
    method: str = EXACT,
    bins: int = 256,
    l2_lambda: float = 1.0,
    min_loss_reduction: float = 0.01,
    min_child_weight: float = 0.0,
    min_child_samples: int = 1,
) -> Optional[SplitCandidate]:
    """
    Best positive-gain split of a node's rows.

    Args:
        X: Feature rows of the node
        g, h: Gradients and hessians of those rows (already GOSS-weighted)
        features: Candidate feature indices, scanned in order
        method: 'exact' scans every boundary between distinct sorted values;
            'histogram' scans the edges of ``bins`` equal-width bins over the
            node's range ('goss' rows are scanned exactly)
        min_child_weight: Minimum hessian sum per child
        min_child_samples: Minimum row count per child

    Returns:
        SplitCandidate or None when nothing has positive gain within constraints.
        Ties go to the earlier feature, then the lower threshold.
    """
    n_rows = X.shape[0]
    if n_rows < 2:
        return None
    G, H = float(g.sum()), float(h.sum())
    best: Optional[SplitCandidate] = None

    for feature in features:
        column = X[:, feature]
        if method == HISTOGRAM:
            candidates = _histogram_candidates(column, g, h, bins)
        elif method in (EXACT, GOSS):
            candidates = _exact_candidates(column, g, h)
        else:
            raise ValueError(f"unknown split method {method!r}")
        if candidates is None:
            continue

        thresholds, GL, HL, count_left = candidates
        GR, HR, count_right = G - GL, H - HL, n_rows - count_left
        gains = _vector_gain(GL, HL, GR, HR, l2_lambda, min_loss_reduction)
        allowed = (
            (HL >= min_child_weight) & (HR >= min_child_weight)
            & (count_left >= min_child_samples) & (count_right >= min_child_samples)
        )
        gains = np.where(allowed, gains, -np.inf)
        position = int(np.argmax(gains))
        gain = float(gains[position])
        if gain > 0 and (best is None or gain > best.gain):
            best = SplitCandidate(feature=int(feature), threshold=float(thresholds[position]), gain=gain)

    return best
