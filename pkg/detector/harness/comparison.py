"""
Produced-versus-published delta table.
"""
from dataclasses import dataclass
from enum import Enum
import logging
from typing import Dict, List, Optional, Sequence

from .reference import PUBLISHED_SCORES, CellKey, PublishedReference
from .runs import EvalRun, order_key

logger = logging.getLogger(__name__)


class DeltaStatus(str, Enum):
    MATCHED = 'matched'
    MISSING_RUN = 'missing_run'
    NOT_IN_REFERENCE = 'not_in_reference'


@dataclass(frozen=True)
class DeltaRow:
    """
    One cell of the comparison.

    ``delta`` is produced minus published, None unless both sides exist.
    """
    model: str
    dataset: str
    scenario: str
    phase: str
    produced: Optional[float]
    published: Optional[float]
    status: DeltaStatus

    @property
    def delta(self) -> Optional[float]:
        if self.produced is None or self.published is None:
            return None
        return self.produced - self.published

    def as_row(self) -> Dict:
        return {
            'model': self.model,
            'dataset': self.dataset,
            'scenario': self.scenario,
            'phase': self.phase,
            'produced': self.produced,
            'published': self.published,
            'delta': self.delta,
            'status': self.status.value,
        }


def compare_to_reference(
    runs: Sequence[EvalRun],
    reference: PublishedReference = PUBLISHED_SCORES,
    datasets: Optional[Sequence[str]] = None,
) -> List[DeltaRow]:
    """
    Pair every run with its reference cell.

    Reference cells without a run are flagged ``missing_run``; runs without a
    cell are flagged ``not_in_reference``. When ``datasets`` is given only
    reference cells of those datasets can be missing, so a single-capture
    run set is not buried under missing rows. A run key produced more than
    once keeps its last run.

    Returns:
        list: Rows in scenario, phase, model, dataset order
    """
    produced: Dict[CellKey, float] = {}
    for run in runs:
        if run.key in produced:
            logger.warning(f"Duplicate run for {run.key}; keeping the later one")
        produced[run.key] = run.score

    wanted = set(datasets) if datasets is not None else None
    rows = []
    for key in set(produced) | set(reference):
        in_reference = key in reference
        if key not in produced and wanted is not None and key[1] not in wanted:
            continue
        if key not in produced:
            status = DeltaStatus.MISSING_RUN
        elif in_reference:
            status = DeltaStatus.MATCHED
        else:
            status = DeltaStatus.NOT_IN_REFERENCE
        rows.append(DeltaRow(
            *key,
            produced=produced.get(key),
            published=reference.cells.get(key),
            status=status,
        ))
    return sorted(rows, key=lambda row: order_key(row.model, row.dataset, row.scenario, row.phase))
