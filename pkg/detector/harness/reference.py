"""
Published IoT-23 scores the reproduced runs are compared against.

Binary cells are F1-scores, multi-class cells macro-averaged F1-scores, all
as percentages. DRL has no cross-validation cells and unsupervised models no
multi-class cells.
"""
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from detector.flows import DATASET_ORDER
from detector.preprocessing import Scenario
from .runs import EvalRun, Phase

CellKey = Tuple[str, str, str, str]

BINARY_DATASETS = list(DATASET_ORDER)
MULTICLASS_DATASETS = ['1-1-full', '1-1-large', '34-1', '42-1', '44-1']

_BINARY_CV = {
    'svm':      [100, 100, 100, 100, 100, 97.99, 99.30, 100, 97.84],
    'xgboost':  [99.99, 99.99, 99.99, 99.99, 100, 89.98, 98.14, 100, 97.84],
    'lightgbm': [100, 99.99, 99.99, 99.99, 100, 97.99, 99.73, 100, 97.84],
    'iforest':  [76.62, 71.88, 71.82, 73.36, 93.75, 68.15, 88.20, 100, 88.79],
    'lof':      [62.18, 61.88, 61.03, 80.64, 93.54, 91.66, 97.43, 79.97, 87.89],
}

_BINARY_EVAL = {
    'svm':      [100, 100, 100, 100, 95.43, 94.42, 99.43, 100, 100],
    'xgboost':  [99.99, 99.99, 99.99, 99.99, 95.43, 94.42, 98.84, 100, 96.28],
    'lightgbm': [100, 99.99, 100, 100, 95.43, 94.42, 99.76, 100, 96.28],
    'iforest':  [96.46, 94.80, 94.68, 95.37, 100, 89.95, 75.08, 100, 90.91],
    'lof':      [53.46, 53.40, 54.66, 80.18, 89.95, 87.45, 96.80, 49.96, 100],
    'drl':      [99.91, 99.91, 99.97, 99.98, 78.49, 83.28, 98.65, 83.31, 75.39],
}

_MULTICLASS_CV = {
    'svm':      [66.67, 80.00, 95.67, 59.97, 97.66],
    'xgboost':  [66.66, 80.00, 97.30, 46.67, 96.44],
    'lightgbm': [66.66, 80.00, 98.77, 59.99, 97.66],
}

_MULTICLASS_EVAL = {
    'svm':      [66.67, 66.67, 95.89, 33.31, 100],
    'xgboost':  [66.66, 66.66, 95.59, 33.33, 100],
    'lightgbm': [66.66, 66.67, 99.64, 66.65, 100],
    'drl':      [66.64, 66.64, 63.75, 33.38, 88.38],
}


def _cells(table: Dict[str, List[float]], datasets: Sequence[str], scenario: Scenario, phase: Phase) -> Dict[CellKey, float]:
    return {
        (model, dataset, scenario.value, phase.value): float(value)
        for model, values in table.items()
        for dataset, value in zip(datasets, values)
    }


@dataclass(frozen=True)
class PublishedReference:
    """
    Read-only (model, dataset, scenario, phase) -> score table.

    Example:
        PUBLISHED_SCORES.get('lightgbm', '34-1', Scenario.BINARY, Phase.EVAL)  # 99.76
    """
    cells: Mapping[CellKey, float]

    def __post_init__(self):
        object.__setattr__(self, 'cells', MappingProxyType(dict(self.cells)))

    def get(self, model: str, dataset: str, scenario: Scenario, phase: Phase) -> Optional[float]:
        return self.cells.get((model, dataset, Scenario(scenario).value, Phase(phase).value))

    def __contains__(self, key: CellKey) -> bool:
        return key in self.cells

    def __iter__(self) -> Iterator[CellKey]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def datasets(self) -> List[str]:
        return sorted({key[1] for key in self.cells})

    @classmethod
    def from_runs(cls, runs: Iterable[EvalRun]) -> 'PublishedReference':
        """Reference built from runs, e.g. to compare two reproductions."""
        return cls(cells={run.key: run.score for run in runs})


PUBLISHED_SCORES = PublishedReference(cells={
    **_cells(_BINARY_CV, BINARY_DATASETS, Scenario.BINARY, Phase.CV),
    **_cells(_BINARY_EVAL, BINARY_DATASETS, Scenario.BINARY, Phase.EVAL),
    **_cells(_MULTICLASS_CV, MULTICLASS_DATASETS, Scenario.MULTICLASS, Phase.CV),
    **_cells(_MULTICLASS_EVAL, MULTICLASS_DATASETS, Scenario.MULTICLASS, Phase.EVAL),
})
