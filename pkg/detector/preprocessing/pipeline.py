"""
End-to-end preprocessing: labeled flows in, encoded train/eval pair out.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from detector.exceptions import DatasetError
from detector.flows.record import FlowRecord
from .encoding import EncodedDataset, build_feature_schema, vectorize
from .labels import Scenario, class_of, drop_single_sample_classes, multiclass_eligible, ordered_class_names
from .splitting import SplitSpec, split_indices

logger = logging.getLogger(__name__)


@dataclass
class PreparedDataset:
    """Encoded train/eval pair for one capture and scenario."""
    train: EncodedDataset
    evaluation: EncodedDataset
    scenario: Scenario
    dropped_classes: List[str] = field(default_factory=list)

    @property
    def class_names(self) -> List[str]:
        return self.train.class_names

    @property
    def multiclass_eligible(self) -> bool:
        return multiclass_eligible(self.class_names)


def prepare_dataset(
    records: Sequence[FlowRecord],
    scenario: Scenario = Scenario.BINARY,
    split_spec: SplitSpec = SplitSpec(),
) -> PreparedDataset:
    """
    Run the preprocessing chain on one capture.

    Singleton classes are dropped, the raw flows are split, the schema is
    fitted on the training side only and both sides are vectorized with it.

    Args:
        records: Parsed flows
        scenario: Which labels the split is stratified on
        split_spec: Split parameters

    Returns:
        PreparedDataset

    Raises:
        DatasetError: Empty input, or a class cannot appear on both sides
    """
    if not records:
        raise DatasetError("cannot prepare an empty capture")

    kept = drop_single_sample_classes(records, scenario)
    before = {class_of(record, scenario) for record in records}
    after = {class_of(record, scenario) for record in kept}
    dropped = sorted(before - after)

    labels = [class_of(record, scenario) for record in kept]
    train_idx, eval_idx = split_indices(labels, split_spec)
    train_flows = [kept[i] for i in train_idx]
    eval_flows = [kept[i] for i in eval_idx]

    schema = build_feature_schema(train_flows)
    class_names = ordered_class_names(class_of(record) for record in kept)
    train = vectorize(train_flows, schema, class_names)
    evaluation = vectorize(eval_flows, schema, class_names)

    logger.info(
        f"Prepared {scenario.value} dataset: {len(train)} train / {len(evaluation)} eval rows, "
        f"{schema.n_features} features, classes {class_names}"
    )
    return PreparedDataset(train=train, evaluation=evaluation, scenario=scenario, dropped_classes=dropped)


class DatasetPreparationService:
    """Preparation with split defaults taken from settings."""

    def __init__(self, eval_fraction: float = 0.2, seed: int = 1):
        self.eval_fraction = eval_fraction
        self.seed = seed

    def prepare(self, records: Sequence[FlowRecord], scenario: Scenario, seed: Optional[int] = None) -> PreparedDataset:
        spec = SplitSpec(eval_fraction=self.eval_fraction, seed=self.seed if seed is None else seed)
        return prepare_dataset(records, scenario, spec)
