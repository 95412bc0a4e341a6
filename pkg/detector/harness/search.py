"""
Grid search by cross-validated macro-F1.
"""
from dataclasses import dataclass, field
import logging
from typing import Callable, Dict, List

from detector.learners import Learner
from detector.preprocessing import EncodedDataset, Scenario
from detector.utils.concurrency import run_jobs
from .cross_validation import CrossValidationResult, cross_validate
from .grid import GridSpec

logger = logging.getLogger(__name__)


@dataclass
class SearchResult:
    """
    Attributes:
        kind: Learner kind searched
        best: Result of the winning grid point
        results: Results of every grid point, in grid order
        skipped: Grid points dropped before the search
    """
    kind: str
    best: CrossValidationResult
    results: List[CrossValidationResult] = field(default_factory=list)
    skipped: List[Dict] = field(default_factory=list)

    @property
    def best_config(self) -> Dict:
        return self.best.config

    @property
    def best_score(self) -> float:
        return self.best.mean_score


def grid_search(
    factory: Callable[[Dict], Learner],
    grid: GridSpec,
    train: EncodedDataset,
    scenario: Scenario,
    k: int = 5,
    seed: int = 1,
    jobs: int = 1,
) -> SearchResult:
    """
    Cross-validate every grid point and keep the one with the highest mean.

    Points run concurrently; each point's folds run sequentially. Ties go to
    the point listed first in the grid.
    """
    def evaluate_point(config: Dict) -> CrossValidationResult:
        return cross_validate(factory, config, train, scenario, k=k, seed=seed, jobs=1)

    results = run_jobs(evaluate_point, grid.points, jobs)
    best = results[0]
    for result in results[1:]:
        if result.mean_score > best.mean_score:
            best = result

    logger.info(f"Grid search {grid.kind} ({scenario.value}): {len(results)} points, "
                f"best {best.config} at {best.mean_score:.2f}")
    return SearchResult(kind=grid.kind, best=best, results=results, skipped=list(grid.skipped))
