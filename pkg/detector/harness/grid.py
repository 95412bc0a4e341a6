"""
Hyperparameter grids searched per model.

Each searched range is covered by its endpoints and midpoint. Contamination
grids add the training set's own malicious ratio.
"""
from dataclasses import dataclass, field
from itertools import product
import logging
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from detector.exceptions import ConfigurationError
from detector.learners import LEARNERS
from detector.preprocessing import EncodedDataset, Scenario, contamination_for

logger = logging.getLogger(__name__)

SVM_C = (0.001, 0.01, 0.1)

LEVEL_WISE_MIN_CHILD_WEIGHT = (1.2, 50.6, 100.0)
LEVEL_WISE_ESTIMATORS = (60, 70, 80)
LEVEL_WISE_LEARNING_RATE = (0.001, 0.0055, 0.01)

LEAF_WISE_MIN_CHILD_SAMPLES = (2, 1001, 2000)
LEAF_WISE_ESTIMATORS = (60, 80, 100)
LEAF_WISE_LEARNING_RATE = (0.001, 0.0205, 0.04)

IFOREST_MAX_SAMPLES = (100, 175, 250)
LOF_NEIGHBORS = (35, 100, 250, 520)
CONTAMINATION = (0.001, 0.0255, 0.05)


@dataclass(frozen=True)
class GridSpec:
    """
    Ordered candidate configurations of one model.

    Attributes:
        kind: Learner kind the points configure
        points: Candidate configurations in search order
        skipped: Points dropped before the search (e.g. infeasible LOF k)
    """
    kind: str
    points: Tuple[Dict, ...]
    skipped: Tuple[Dict, ...] = field(default=())

    def __post_init__(self):
        if not self.points:
            raise ConfigurationError(f"grid for {self.kind} is empty")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Dict]:
        return iter(self.points)

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'points': list(self.points), 'skipped': list(self.skipped)}

    @classmethod
    def from_points(cls, kind: str, points: Sequence[Dict]) -> 'GridSpec':
        """Grid from user-supplied points (config file overrides)."""
        if kind not in LEARNERS:
            raise ConfigurationError(f"grid given for unknown model {kind!r}")
        return cls(kind=kind, points=tuple(dict(point) for point in points))


def _combine(**axes) -> Tuple[Dict, ...]:
    names = list(axes)
    return tuple(dict(zip(names, values)) for values in product(*axes.values()))


def contamination_grid(train: EncodedDataset) -> Tuple[float, ...]:
    """Fixed contamination points plus the dataset-derived one, duplicates removed."""
    return tuple(dict.fromkeys(CONTAMINATION + (round(contamination_for(train), 10),)))


def smallest_fold_train_size(n_rows: int, folds: int) -> int:
    """Training rows of the fold with the largest validation part."""
    return n_rows - math.ceil(n_rows / folds)


def _lof_grid(train: EncodedDataset, folds: int) -> GridSpec:
    contamination = contamination_grid(train)
    limit = smallest_fold_train_size(len(train), folds) - 1
    feasible = [k for k in LOF_NEIGHBORS if k <= limit]
    infeasible = [k for k in LOF_NEIGHBORS if k > limit]
    skipped = _combine(k=infeasible, contamination=contamination) if infeasible else ()
    if infeasible:
        logger.warning(f"Skipping LOF k={infeasible}: smallest fold has only {limit + 1} training rows")
    if not feasible:
        if limit < 1:
            raise ConfigurationError(f"training set of {len(train)} rows is too small for LOF")
        feasible = [limit]
        logger.warning(f"No LOF grid value fits; falling back to k={limit}")
    return GridSpec(kind='lof', points=_combine(k=feasible, contamination=contamination), skipped=skipped)


def default_grid(kind: str, train: EncodedDataset, scenario: Scenario = Scenario.BINARY, folds: int = 5) -> GridSpec:
    """
    Search grid of one model on one training set.

    Args:
        kind: Learner kind
        train: Training set the search will run on (after any contamination subsampling)
        scenario: Classification scenario
        folds: Cross-validation folds, used to bound LOF's k

    Raises:
        ConfigurationError: Unknown kind, or an unsupervised model in the multi-class scenario
    """
    if kind not in LEARNERS:
        raise ConfigurationError(f"unknown model {kind!r}")
    if scenario == Scenario.MULTICLASS and not LEARNERS[kind].multiclass_capable:
        raise ConfigurationError(f"{LEARNERS[kind].display_name} only runs in the binary scenario")

    if kind == 'svm':
        return GridSpec(kind=kind, points=_combine(c=SVM_C))
    if kind == 'xgboost':
        return GridSpec(kind=kind, points=_combine(
            min_child_weight=LEVEL_WISE_MIN_CHILD_WEIGHT,
            n_estimators=LEVEL_WISE_ESTIMATORS,
            learning_rate=LEVEL_WISE_LEARNING_RATE,
        ))
    if kind == 'lightgbm':
        return GridSpec(kind=kind, points=_combine(
            min_child_samples=LEAF_WISE_MIN_CHILD_SAMPLES,
            n_estimators=LEAF_WISE_ESTIMATORS,
            learning_rate=LEAF_WISE_LEARNING_RATE,
        ))
    if kind == 'iforest':
        return GridSpec(kind=kind, points=_combine(
            max_samples=IFOREST_MAX_SAMPLES, contamination=contamination_grid(train),
        ))
    if kind == 'lof':
        return _lof_grid(train, folds)
    # DRL is tuned by hand, not searched
    return GridSpec(kind=kind, points=({},))


def resolve_grid(
    kind: str,
    train: EncodedDataset,
    scenario: Scenario,
    folds: int = 5,
    overrides: Optional[Dict[str, List[Dict]]] = None,
) -> GridSpec:
    """User-supplied grid when one is configured for ``kind``, the default otherwise."""
    if overrides and overrides.get(kind):
        return GridSpec.from_points(kind, overrides[kind])
    return default_grid(kind, train, scenario, folds)
