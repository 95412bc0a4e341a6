"""
Train/eval splitting, stratified folding and contamination subsampling.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from detector.exceptions import ConfigurationError, DatasetError
from .encoding import EncodedDataset

logger = logging.getLogger(__name__)

CONTAMINATION_RANGE = (0.001, 0.05)
MAX_CONTAMINATION = 0.5


@dataclass(frozen=True)
class SplitSpec:
    """How to divide a dataset into training and evaluation parts."""
    eval_fraction: float = 0.2
    seed: int = 1
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.eval_fraction < 1.0:
            raise ConfigurationError(f"eval_fraction must lie in (0, 1), got {self.eval_fraction}")


@dataclass(frozen=True)
class Fold:
    """One cross-validation fold: row indices into the training set."""
    index: int
    train_indices: np.ndarray
    validation_indices: np.ndarray


def _round_half_up(value: float) -> int:
    return int(np.floor(value + 0.5))


def split_indices(labels: Sequence, spec: SplitSpec) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split row positions into training and evaluation index arrays.

    Stratified splits take ``eval_fraction`` of every class (at least one row,
    never all of them). Both index arrays are sorted.

    Raises:
        DatasetError: A class cannot appear on both sides
    """
    labels = np.asarray(labels)
    rng = np.random.default_rng(spec.seed)
    classes, counts = np.unique(labels, return_counts=True)
    too_small = [str(name) for name, count in zip(classes, counts) if count < 2]
    if too_small:
        raise DatasetError(f"classes too small to split: {', '.join(too_small)}")

    if spec.stratified:
        eval_parts = []
        for name, count in zip(classes, counts):
            members = rng.permutation(np.flatnonzero(labels == name))
            n_eval = min(max(1, _round_half_up(count * spec.eval_fraction)), count - 1)
            eval_parts.append(members[:n_eval])
        eval_idx = np.sort(np.concatenate(eval_parts))
    else:
        n_eval = _round_half_up(len(labels) * spec.eval_fraction)
        eval_idx = np.sort(rng.permutation(len(labels))[:n_eval])

    train_mask = np.ones(len(labels), dtype=bool)
    train_mask[eval_idx] = False
    train_idx = np.flatnonzero(train_mask)

    for name in classes:
        if not (labels[train_idx] == name).any() or not (labels[eval_idx] == name).any():
            raise DatasetError(f"class {name} does not appear on both sides of the split")
    return train_idx, eval_idx


def split_train_eval(dataset: EncodedDataset, spec: SplitSpec) -> Tuple[EncodedDataset, EncodedDataset]:
    """Split an encoded dataset, stratifying on its multi-class targets."""
    train_idx, eval_idx = split_indices(dataset.multiclass_targets, spec)
    return dataset.subset(train_idx), dataset.subset(eval_idx)


def make_folds(labels: Sequence, k: int = 5, seed: int = 1) -> List[Fold]:
    """
    Stratified k-fold partition of row positions.

    Each class is shuffled and dealt round-robin over the folds, continuing
    from where the previous class stopped, so classes with fewer than ``k``
    members land in different folds.

    Args:
        labels: Class label per row
        k: Number of folds
        seed: Shuffle seed

    Returns:
        list: ``k`` Fold objects whose validation parts partition the rows
    """
    if k < 2:
        raise ConfigurationError(f"need at least 2 folds, got {k}")
    labels = np.asarray(labels)
    if len(labels) < k:
        raise DatasetError(f"{len(labels)} rows cannot fill {k} folds")

    rng = np.random.default_rng(seed)
    assignment = np.empty(len(labels), dtype=int)
    offset = 0
    for name in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == name))
        assignment[members] = (offset + np.arange(len(members))) % k
        offset = (offset + len(members)) % k

    everything = np.arange(len(labels))
    return [
        Fold(
            index=i,
            train_indices=everything[assignment != i],
            validation_indices=everything[assignment == i],
        )
        for i in range(k)
    ]


def subsample_contamination(train: EncodedDataset, target_ratio: float, seed: int = 1) -> EncodedDataset:
    """
    Reduce malicious rows until they make up ``target_ratio`` of the set.

    All benign rows are kept; round(benign * r / (1 - r)) malicious rows are
    drawn at random. A set already at or under the ratio is returned as is.

    Raises:
        ConfigurationError: Ratio outside (0, 0.5]
        DatasetError: No benign rows
    """
    if not 0.0 < target_ratio <= MAX_CONTAMINATION:
        raise ConfigurationError(f"contamination ratio must lie in (0, {MAX_CONTAMINATION}], got {target_ratio}")

    malicious = np.flatnonzero(train.binary_targets == 1)
    benign = np.flatnonzero(train.binary_targets == 0)
    if not len(benign):
        raise DatasetError("cannot subsample contamination without benign rows")
    if train.malicious_ratio() <= target_ratio:
        return train

    keep = _round_half_up(len(benign) * target_ratio / (1.0 - target_ratio))
    rng = np.random.default_rng(seed)
    kept = rng.choice(malicious, size=keep, replace=False)
    logger.info(f"Subsampled malicious rows {len(malicious)} -> {keep} (target ratio {target_ratio})")
    return train.subset(np.sort(np.concatenate([benign, kept])))


def contamination_for(train: EncodedDataset, bounds: Tuple[float, float] = CONTAMINATION_RANGE) -> float:
    """Malicious ratio of a training set, clamped to ``bounds``."""
    low, high = bounds
    return float(min(max(train.malicious_ratio(), low), high))
