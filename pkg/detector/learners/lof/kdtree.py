"""
Exact k-nearest-neighbour search with a k-d tree (Euclidean metric).
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from detector.exceptions import ConfigurationError

DEFAULT_LEAF_SIZE = 30
QUERY_BLOCK_SIZE = 1024


@dataclass
class _Node:
    indices: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    split_dim: int = -1
    split_value: float = 0.0
    left: Optional['_Node'] = None
    right: Optional['_Node'] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def min_sq_distances(self, queries: np.ndarray) -> np.ndarray:
        """Squared distance from each query row to the bounding box."""
        gap = np.maximum(self.lower - queries, 0.0) + np.maximum(queries - self.upper, 0.0)
        return np.einsum('qd,qd->q', gap, gap)


class KDTree:
    """
    Static k-d tree over a point matrix.

    Nodes split on the dimension of largest spread at the median until at
    most ``leaf_size`` points remain.
    """

    def __init__(self, points: np.ndarray, leaf_size: int = DEFAULT_LEAF_SIZE):
        self.points = np.asarray(points, dtype=float)
        if self.points.ndim != 2 or not self.points.shape[0]:
            raise ConfigurationError("k-d tree needs a non-empty 2-D point matrix")
        self.leaf_size = leaf_size
        self.root = self._build(np.arange(self.points.shape[0]))

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def _build(self, indices: np.ndarray) -> _Node:
        subset = self.points[indices]
        node = _Node(indices=indices, lower=subset.min(axis=0), upper=subset.max(axis=0))
        if indices.size <= self.leaf_size:
            return node
        spread = node.upper - node.lower
        dim = int(np.argmax(spread))
        if spread[dim] == 0:
            return node

        order = np.argsort(subset[:, dim], kind='stable')
        middle = indices.size // 2
        node.split_dim = dim
        node.split_value = float(subset[order[middle], dim])
        node.left = self._build(indices[order[:middle]])
        node.right = self._build(indices[order[middle:]])
        return node

    def query(self, query: np.ndarray, k: int, exclude: Optional[int] = None) -> List[Tuple[int, float]]:
        """
        The ``k`` nearest points to ``query``.

        Args:
            query: Point to search around
            k: Neighbour count
            exclude: Index of a point to leave out (a training point querying itself)

        Returns:
            list: (index, distance) pairs, distance-ascending, ties by lower index

        Raises:
            ConfigurationError: k exceeds the number of candidate points
        """
        excluded = None if exclude is None else np.array([exclude])
        indices, distances = self.query_batch(np.atleast_2d(np.asarray(query, dtype=float)), k, excluded)
        return [(int(i), float(d)) for i, d in zip(indices[0], distances[0])]

    def query_batch(
        self,
        queries: np.ndarray,
        k: int,
        exclude: Optional[np.ndarray] = None,
        block_size: int = QUERY_BLOCK_SIZE,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        The ``k`` nearest points of every row of ``queries``.

        Queries are processed in blocks; each block walks the tree once,
        pruning a node for all queries whose current k-th distance it cannot
        beat.

        Args:
            queries: Query matrix (m x d)
            k: Neighbour count
            exclude: Per-query index to leave out, or None
            block_size: Queries per traversal

        Returns:
            tuple: (indices, distances), both m x k, rows ordered by
            distance then index

        Raises:
            ConfigurationError: k exceeds the number of candidate points
        """
        queries = np.asarray(queries, dtype=float)
        available = self.size - (1 if exclude is not None else 0)
        if not 1 <= k <= available:
            raise ConfigurationError(f"k={k} outside 1..{available}")

        indices = np.empty((queries.shape[0], k), dtype=int)
        distances = np.empty((queries.shape[0], k))
        for start in range(0, queries.shape[0], block_size):
            stop = start + block_size
            block_exclude = None if exclude is None else np.asarray(exclude)[start:stop]
            indices[start:stop], distances[start:stop] = self._query_block(queries[start:stop], k, block_exclude)
        return indices, np.sqrt(distances)

    def _query_block(self, queries: np.ndarray, k: int, exclude: Optional[np.ndarray]):
        m = queries.shape[0]
        # squared distances; unfilled slots hold (inf, size) so they sort last
        best_d = np.full((m, k), np.inf)
        best_i = np.full((m, k), self.size, dtype=int)

        stack = [(self.root, np.arange(m))]
        while stack:
            node, active = stack.pop()
            active = active[node.min_sq_distances(queries[active]) <= best_d[active, -1]]
            if not active.size:
                continue
            if node.is_leaf:
                diffs = self.points[node.indices][None, :, :] - queries[active][:, None, :]
                leaf_d = np.einsum('qld,qld->ql', diffs, diffs)
                leaf_i = np.broadcast_to(node.indices, leaf_d.shape)
                if exclude is not None:
                    leaf_d = np.where(leaf_i == exclude[active][:, None], np.inf, leaf_d)
                cand_d = np.concatenate([best_d[active], leaf_d], axis=1)
                cand_i = np.concatenate([best_i[active], leaf_i], axis=1)
                order = np.lexsort((cand_i, cand_d), axis=1)[:, :k]
                best_d[active] = np.take_along_axis(cand_d, order, axis=1)
                best_i[active] = np.take_along_axis(cand_i, order, axis=1)
                continue
            goes_left = queries[active, node.split_dim] < node.split_value
            left_first, right_first = active[goes_left], active[~goes_left]
            # far child pushed before near child, per group
            stack.append((node.right, left_first))
            stack.append((node.left, left_first))
            stack.append((node.left, right_first))
            stack.append((node.right, right_first))
        return best_i, best_d


def kdtree_knn(index: KDTree, query: np.ndarray, k: int, exclude: Optional[int] = None) -> List[Tuple[int, float]]:
    """Exact Euclidean k-NN; see ``KDTree.query``."""
    return index.query(query, k, exclude=exclude)
