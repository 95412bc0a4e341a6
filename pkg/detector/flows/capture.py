"""
Capture catalogue and class-composition summaries.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from detector.exceptions import DatasetError
from .record import CaptureSummary, FlowRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KnownCapture:
    """Published composition of one of the studied captures."""
    name: str
    malware_type: str
    total_samples: int
    per_class: Dict[str, int]


def _known(name: str, malware_type: str, total: int, malicious: Dict[str, int]) -> KnownCapture:
    per_class = {'Benign': total - sum(malicious.values()), **malicious}
    return KnownCapture(name=name, malware_type=malware_type, total_samples=total, per_class=per_class)


KNOWN_CAPTURES: Dict[str, KnownCapture] = {
    capture.name: capture for capture in (
        _known('1-1-full', 'Hide and Seek', 1_008_749, {'POAHPS': 539_465, 'C&C': 8}),
        _known('1-1-large', 'Hide and Seek', 400_000, {'POAHPS': 199_996, 'C&C': 4}),
        _known('1-1-medium', 'Hide and Seek', 200_000, {'POAHPS': 99_999, 'C&C': 1}),
        _known('1-1-small', 'Hide and Seek', 20_000, {'POAHPS': 10_000}),
        _known('20-1', 'Torii', 3_210, {'C&C-Torii': 16}),
        _known('21-1', 'Torii', 3_287, {'C&C-Torii': 14}),
        _known('34-1', 'Mirai', 23_146, {'DDoS': 14_394, 'C&C': 6_706, 'POAHPS': 122}),
        _known('42-1', 'Trojan', 4_427, {'FileDownload': 3, 'C&C-FD': 3}),
        _known('44-1', 'Mirai', 238, {'C&C': 14, 'C&C-FD': 11, 'DDoS': 1}),
    )
}

# The IoT-23 capture 1-1 appears under both names
KNOWN_CAPTURES['1-1'] = KNOWN_CAPTURES['1-1-full']

DATASET_ORDER = ['1-1-full', '1-1-large', '1-1-medium', '1-1-small', '20-1', '21-1', '34-1', '42-1', '44-1']


def summarize_capture(records: Sequence[FlowRecord], capture_name: Optional[str] = None) -> CaptureSummary:
    """
    Count flows per consolidated class.

    Args:
        records: Parsed flows of one capture
        capture_name: Catalogue name, used to attach the malware type

    Returns:
        CaptureSummary

    Raises:
        DatasetError: No records given
    """
    from detector.preprocessing.labels import consolidate_labels

    if not records:
        raise DatasetError("cannot summarize an empty capture")

    per_class = Counter(consolidate_labels(record) for record in records)
    known = KNOWN_CAPTURES.get(capture_name or '')

    summary = CaptureSummary(
        total_samples=len(records),
        per_class=dict(per_class),
        malware_type=known.malware_type if known else None,
        capture_name=capture_name,
    )

    differences = summary.catalogue_differences()
    if differences:
        logger.warning(f"Capture {capture_name} differs from its published composition: {differences}")

    return summary
