"""
Regression trees over gradient statistics, grown level-wise or leaf-wise.
"""
from dataclasses import dataclass
import heapq
import itertools
import math
from typing import List, Optional

import numpy as np

from .config import EXACT, GbdtConfig
from .splits import SplitCandidate, find_best_split, leaf_value


@dataclass
class TreeNode:
    """
    Internal node (feature, threshold, left, right) or leaf (value).

    ``n_samples`` and ``hessian`` record the rows and hessian sum that reached
    the node while growing.
    """
    value: float = 0.0
    feature: Optional[int] = None
    threshold: Optional[float] = None
    left: Optional['TreeNode'] = None
    right: Optional['TreeNode'] = None
    n_samples: int = 0
    hessian: float = 0.0
    depth: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def leaves(self) -> List['TreeNode']:
        if self.is_leaf:
            return [self]
        return self.left.leaves() + self.right.leaves()

    def height(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.height(), self.right.height())

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {'value': self.value, 'n': self.n_samples, 'h': self.hessian}
        return {
            'feature': self.feature,
            'threshold': self.threshold,
            'n': self.n_samples,
            'h': self.hessian,
            'left': self.left.to_dict(),
            'right': self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict, depth: int = 0) -> 'TreeNode':
        if 'feature' not in data:
            return cls(value=float(data['value']), n_samples=data.get('n', 0), hessian=data.get('h', 0.0), depth=depth)
        return cls(
            feature=int(data['feature']),
            threshold=float(data['threshold']),
            n_samples=data.get('n', 0),
            hessian=data.get('h', 0.0),
            depth=depth,
            left=cls.from_dict(data['left'], depth + 1),
            right=cls.from_dict(data['right'], depth + 1),
        )


def predict_tree(node: TreeNode, X: np.ndarray) -> np.ndarray:
    """Leaf value reached by every row of ``X``."""
    out = np.empty(X.shape[0])
    stack = [(node, np.arange(X.shape[0]))]
    while stack:
        current, rows = stack.pop()
        if current.is_leaf:
            out[rows] = current.value
            continue
        goes_left = X[rows, current.feature] < current.threshold
        stack.append((current.left, rows[goes_left]))
        stack.append((current.right, rows[~goes_left]))
    return out


def sample_features(n_features: int, fraction: float, rng: np.random.Generator) -> np.ndarray:
    """Sorted random subset of ``round(fraction * n_features)`` features (at least one)."""
    size = max(1, int(round(fraction * n_features)))
    return np.sort(rng.permutation(n_features)[:size])


class _Grower:
    def __init__(self, X, g, h, config: GbdtConfig, method: str, features):
        self.X, self.g, self.h = X, g, h
        self.config = config
        self.method = method
        self.features = features
        if config.leaf_wise:
            self.min_child_weight, self.min_child_samples = 0.0, config.min_child_samples
        else:
            self.min_child_weight, self.min_child_samples = config.min_child_weight, 1

    def make_leaf(self, rows: np.ndarray, depth: int) -> TreeNode:
        G, H = float(self.g[rows].sum()), float(self.h[rows].sum())
        return TreeNode(
            value=leaf_value(G, H, self.config.l2_lambda, self.config.learning_rate),
            n_samples=int(rows.size),
            hessian=H,
            depth=depth,
        )

    def best_split(self, rows: np.ndarray) -> Optional[SplitCandidate]:
        return find_best_split(
            self.X[rows], self.g[rows], self.h[rows], self.features,
            method=self.method,
            bins=self.config.histogram_bins,
            l2_lambda=self.config.l2_lambda,
            min_loss_reduction=self.config.min_loss_reduction,
            min_child_weight=self.min_child_weight,
            min_child_samples=self.min_child_samples,
        )

    def apply(self, node: TreeNode, rows: np.ndarray, split: SplitCandidate):
        goes_left = self.X[rows, split.feature] < split.threshold
        left_rows, right_rows = rows[goes_left], rows[~goes_left]
        node.feature, node.threshold = split.feature, split.threshold
        node.left = self.make_leaf(left_rows, node.depth + 1)
        node.right = self.make_leaf(right_rows, node.depth + 1)
        return (node.left, left_rows), (node.right, right_rows)


def grow_tree(
    X: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    config: GbdtConfig,
    rng: np.random.Generator,
    method: str = EXACT,
) -> TreeNode:
    """
    Fit one tree to gradient statistics.

    Level-wise growth expands every splittable node of a depth before moving
    to the next, up to ``max_depth``. Leaf-wise growth always splits the leaf
    with the largest gain next, until ``max_leaves`` leaves exist, no leaf
    has a positive gain, or ``max_depth`` stops further splits.
    """
    features = sample_features(X.shape[1], config.feature_subsample, rng)
    grower = _Grower(X, g, h, config, method, features)
    all_rows = np.arange(X.shape[0])
    root = grower.make_leaf(all_rows, 0)

    if not config.leaf_wise:
        frontier = [(root, all_rows)]
        for _ in range(config.max_depth):
            next_frontier = []
            for node, rows in frontier:
                split = grower.best_split(rows)
                if split is not None:
                    next_frontier.extend(grower.apply(node, rows, split))
            if not next_frontier:
                break
            frontier = next_frontier
        return root

    counter = itertools.count()
    heap = []

    def push(node, rows):
        if node.depth >= config.max_depth:
            return
        split = grower.best_split(rows)
        if split is not None:
            heapq.heappush(heap, (-split.gain, next(counter), node, rows, split))

    push(root, all_rows)
    n_leaves = 1
    while heap and n_leaves < config.max_leaves:
        _, _, node, rows, split = heapq.heappop(heap)
        for child, child_rows in grower.apply(node, rows, split):
            push(child, child_rows)
        n_leaves += 1
    return root


def validate_tree(node: TreeNode, config: GbdtConfig) -> List[str]:
    """
    Walk a tree and list every violated growth constraint.

    Returns:
        list: Human-readable violations; empty when the tree is valid
    """
    problems = []
    if node.height() > config.max_depth:
        problems.append(f"depth {node.height()} exceeds max_depth {config.max_depth}")
    if config.leaf_wise and len(node.leaves()) > config.max_leaves:
        problems.append(f"{len(node.leaves())} leaves exceed max_leaves {config.max_leaves}")

    stack = [node]
    while stack:
        current = stack.pop()
        if current.is_leaf:
            continue
        if current.left is None or current.right is None:
            problems.append(f"internal node at depth {current.depth} lacks a child")
            continue
        if not math.isfinite(current.threshold):
            problems.append(f"non-finite threshold at depth {current.depth}")
        for child in (current.left, current.right):
            if config.leaf_wise and child.n_samples < config.min_child_samples:
                problems.append(f"child with {child.n_samples} rows below min_child_samples")
            if not config.leaf_wise and child.hessian < config.min_child_weight:
                problems.append(f"child with hessian {child.hessian:.4g} below min_child_weight")
            stack.append(child)
    return problems
