"""
Confusion matrix.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from detector.exceptions import DatasetError


@dataclass
class ConfusionMatrix:
    """
    Rows are true classes, columns predicted classes.

    Attributes:
        class_names: Class names indexing rows and columns
        counts: Square integer matrix
    """
    class_names: List[str]
    counts: np.ndarray

    def __post_init__(self):
        size = len(self.class_names)
        if self.counts.shape != (size, size):
            raise DatasetError(f"confusion counts must be {size}x{size}, got {self.counts.shape}")
        if (self.counts < 0).any():
            raise DatasetError("confusion counts must be non-negative")

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def one_vs_rest(self, index: int):
        """
        Collapse to (TP, FP, FN, TN) with ``index`` as the positive class.
        """
        tp = int(self.counts[index, index])
        fp = int(self.counts[:, index].sum()) - tp
        fn = int(self.counts[index, :].sum()) - tp
        tn = self.total - tp - fp - fn
        return tp, fp, fn, tn

    def observed(self) -> List[int]:
        """Indices of classes with at least one true or predicted sample."""
        seen = (self.counts.sum(axis=0) + self.counts.sum(axis=1)) > 0
        return [int(i) for i in np.flatnonzero(seen)]

    def to_list(self) -> List[List[int]]:
        return self.counts.astype(int).tolist()


def confusion(
    y_true: Sequence[int],
    y_pred: Sequence[int],
    n_classes: int,
    class_names: Optional[List[str]] = None,
) -> ConfusionMatrix:
    """
    Count (true, predicted) pairs.

    Raises:
        DatasetError: Empty or unequal-length vectors, or an index out of range
    """
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    if y_true.shape != y_pred.shape:
        raise DatasetError(f"label vectors differ in length: {y_true.shape[0]} vs {y_pred.shape[0]}")
    if not y_true.size:
        raise DatasetError("cannot score empty label vectors")
    for name, vector in (('true', y_true), ('predicted', y_pred)):
        if vector.min() < 0 or vector.max() >= n_classes:
            raise DatasetError(f"{name} class index outside 0..{n_classes - 1}")

    counts = np.zeros((n_classes, n_classes), dtype=int)
    np.add.at(counts, (y_true, y_pred), 1)
    names = class_names if class_names is not None else [str(i) for i in range(n_classes)]
    return ConfusionMatrix(class_names=list(names), counts=counts)
