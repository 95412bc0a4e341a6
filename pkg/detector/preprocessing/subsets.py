"""
Balanced subsets of capture 1-1.
"""
import logging
from typing import Dict, List, Mapping, Sequence

import numpy as np

from detector.exceptions import DatasetError
from detector.flows.record import FlowRecord
from .labels import consolidate_labels

logger = logging.getLogger(__name__)

SUBSET_TARGETS: Dict[str, Dict[str, int]] = {
    '1-1-large': {'Benign': 200_000, 'POAHPS': 199_996, 'C&C': 4},
    '1-1-medium': {'Benign': 100_000, 'POAHPS': 99_999, 'C&C': 1},
    '1-1-small': {'Benign': 10_000, 'POAHPS': 10_000},
}


def carve_subset(
    records: Sequence[FlowRecord],
    targets: Mapping[str, int],
    rng: np.random.Generator,
) -> List[FlowRecord]:
    """
    Draw an exact per-class sample, uniformly at random within each class.

    The returned flows keep their original file order.

    Raises:
        DatasetError: A class has fewer flows than its target count
    """
    by_class: Dict[str, List[int]] = {}
    for index, record in enumerate(records):
        by_class.setdefault(consolidate_labels(record), []).append(index)

    chosen = []
    for name in sorted(targets):
        wanted = targets[name]
        available = by_class.get(name, [])
        if len(available) < wanted:
            raise DatasetError(f"class {name} has {len(available)} flows, {wanted} required")
        if wanted:
            chosen.append(rng.choice(np.asarray(available), size=wanted, replace=False))

    indices = np.sort(np.concatenate(chosen)) if chosen else np.array([], dtype=int)
    return [records[i] for i in indices]


def carve_subsets(
    full: Sequence[FlowRecord],
    seed: int = 1,
    targets: Mapping[str, Mapping[str, int]] = SUBSET_TARGETS,
) -> Dict[str, List[FlowRecord]]:
    """
    Build the 1-1-large, 1-1-medium and 1-1-small subsets from capture 1-1.

    Each subset draws independently from the full capture with its own
    seed-derived generator, so equal seeds give equal subsets.

    Args:
        full: All flows of capture 1-1
        seed: Sampling seed
        targets: Subset name -> per-class counts

    Returns:
        dict: subset name -> flows
    """
    subsets = {}
    for offset, name in enumerate(targets):
        rng = np.random.default_rng([seed, offset])
        subsets[name] = carve_subset(full, targets[name], rng)
        logger.info(f"Carved {name}: {len(subsets[name])} flows")
    return subsets
