"""
Label consolidation and class bookkeeping.
"""
import logging
from collections import Counter
from enum import Enum
from typing import Dict, Iterable, List, Sequence

from detector.exceptions import DatasetError
from detector.flows.record import BinaryLabel, FlowRecord

logger = logging.getLogger(__name__)

BENIGN = BinaryLabel.BENIGN.value
MALICIOUS = BinaryLabel.MALICIOUS.value

LABEL_ABBREVIATIONS = {
    'PartOfAHorizontalPortScan': 'POAHPS',
    'C&C-FileDownload': 'C&C-FD',
}


class Scenario(str, Enum):
    """Classification scenario."""

    BINARY = 'binary'
    MULTICLASS = 'multiclass'


def consolidate_labels(record: FlowRecord) -> str:
    """
    Map a record onto its consolidated class name.

    Raises:
        DatasetError: Malicious record without a detailed label
    """
    if not record.is_malicious:
        return BENIGN
    if not record.detailed_label:
        raise DatasetError(f"malicious flow {record.uid} has no detailed label")
    return LABEL_ABBREVIATIONS.get(record.detailed_label, record.detailed_label)


def class_of(record: FlowRecord, scenario: Scenario = Scenario.MULTICLASS) -> str:
    """Class name of a record under the given scenario."""
    if scenario == Scenario.BINARY:
        return MALICIOUS if record.is_malicious else BENIGN
    return consolidate_labels(record)


def class_counts(records: Iterable[FlowRecord], scenario: Scenario = Scenario.MULTICLASS) -> Dict[str, int]:
    """Flow count per class, ordered as in ``ordered_class_names``."""
    counts = Counter(class_of(record, scenario) for record in records)
    return {name: counts[name] for name in ordered_class_names(counts)}


def ordered_class_names(names: Iterable[str]) -> List[str]:
    """Benign first, then the remaining class names alphabetically."""
    unique = set(names)
    ordered = [BENIGN] if BENIGN in unique else []
    return ordered + sorted(unique - {BENIGN})


def drop_single_sample_classes(
    records: Sequence[FlowRecord],
    scenario: Scenario = Scenario.MULTICLASS,
) -> List[FlowRecord]:
    """
    Discard every class represented by exactly one flow.

    A single sample cannot be used both to train and to evaluate, so its
    class is removed before splitting. Order of the survivors is preserved.

    Classes are counted by ``class_of(record, scenario)``. In the binary
    scenario that is Benign/Malicious, so a flow whose attack type occurs
    only once stays in the data as an ordinary Malicious sample; only the
    multi-class scenario discards it.
    """
    counts = Counter(class_of(record, scenario) for record in records)
    singletons = {name for name, count in counts.items() if count == 1}
    if not singletons:
        return list(records)

    logger.info(f"Discarding single-sample classes: {', '.join(sorted(singletons))}")
    return [record for record in records if class_of(record, scenario) not in singletons]


def multiclass_eligible(class_names: Iterable[str]) -> bool:
    """
    Whether a dataset supports the multi-class scenario.

    At least two malicious classes must remain; otherwise the multi-class
    task collapses onto the binary one.
    """
    return len(set(class_names) - {BENIGN}) >= 2
