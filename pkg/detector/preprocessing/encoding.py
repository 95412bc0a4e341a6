"""
Feature schema and vectorization.

Numeric connection fields are min-max scaled with bounds fitted on training
flows; categorical fields are one-hot encoded against a vocabulary that
always ends in an ``unknown`` slot for values never seen in training.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from detector.exceptions import DatasetError
from detector.flows.record import FlowRecord
from .labels import BENIGN, MALICIOUS, Scenario, consolidate_labels, ordered_class_names

logger = logging.getLogger(__name__)

NUMERIC_FEATURES = [
    'orig_p', 'resp_p', 'duration', 'orig_bytes', 'resp_bytes', 'missed_bytes',
    'orig_pkts', 'orig_ip_bytes', 'resp_pkts', 'resp_ip_bytes',
]
CATEGORICAL_FEATURES = ['proto', 'service', 'conn_state', 'history']

MISSING_TOKEN = 'missing'
UNKNOWN_TOKEN = 'unknown'


@dataclass
class FeatureSchema:
    """
    Fitted encoding description.

    Attributes:
        numeric_features: Numeric field names, in column order
        categorical_vocabularies: Field name -> ordered vocabulary (last entry is ``unknown``)
        scale_params: Numeric field name -> (min, max) fitted on training flows
    """
    numeric_features: List[str] = field(default_factory=lambda: list(NUMERIC_FEATURES))
    categorical_vocabularies: Dict[str, List[str]] = field(default_factory=dict)
    scale_params: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        for name, vocabulary in self.categorical_vocabularies.items():
            if len(set(vocabulary)) != len(vocabulary):
                raise DatasetError(f"vocabulary of {name} contains duplicates")
        for name, (low, high) in self.scale_params.items():
            if low > high:
                raise DatasetError(f"scale bounds of {name} are inverted: {low} > {high}")

    @property
    def feature_names(self) -> List[str]:
        names = list(self.numeric_features)
        for name, vocabulary in self.categorical_vocabularies.items():
            names.extend(f"{name}={value}" for value in vocabulary)
        return names

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def to_dict(self) -> dict:
        return {
            'numeric_features': list(self.numeric_features),
            'categorical_features': list(self.categorical_vocabularies),
            'categorical_vocabularies': {k: list(v) for k, v in self.categorical_vocabularies.items()},
            'scale_params': {k: [float(low), float(high)] for k, (low, high) in self.scale_params.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'FeatureSchema':
        # JSON keys come back sorted; column order is stored separately
        vocabularies = data['categorical_vocabularies']
        order = data.get('categorical_features', list(vocabularies))
        return cls(
            numeric_features=list(data['numeric_features']),
            categorical_vocabularies={name: list(vocabularies[name]) for name in order},
            scale_params={k: (float(v[0]), float(v[1])) for k, v in data['scale_params'].items()},
        )


@dataclass
class EncodedDataset:
    """
    Feature matrix plus both target vectors.

    Attributes:
        features: (n_rows, n_features) float matrix
        binary_targets: 1 = Malicious, 0 = Benign
        multiclass_targets: Index into ``class_names``
        class_names: Consolidated class names, Benign first
        schema: Schema that produced ``features``
    """
    features: np.ndarray
    binary_targets: np.ndarray
    multiclass_targets: np.ndarray
    class_names: List[str]
    schema: FeatureSchema

    def __post_init__(self):
        rows = self.features.shape[0]
        if self.binary_targets.shape[0] != rows or self.multiclass_targets.shape[0] != rows:
            raise DatasetError("target vectors do not match the number of feature rows")
        if rows and (self.multiclass_targets.min() < 0 or self.multiclass_targets.max() >= len(self.class_names)):
            raise DatasetError("class index outside the class name list")

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def targets(self, scenario: Scenario) -> np.ndarray:
        if scenario == Scenario.BINARY:
            return self.binary_targets
        return self.multiclass_targets

    def target_names(self, scenario: Scenario) -> List[str]:
        if scenario == Scenario.BINARY:
            return [BENIGN, MALICIOUS]
        return list(self.class_names)

    def subset(self, indices: np.ndarray) -> 'EncodedDataset':
        """Rows at ``indices``, sharing class names and schema."""
        return EncodedDataset(
            features=self.features[indices],
            binary_targets=self.binary_targets[indices],
            multiclass_targets=self.multiclass_targets[indices],
            class_names=self.class_names,
            schema=self.schema,
        )

    def malicious_ratio(self) -> float:
        if not len(self):
            return 0.0
        return float(self.binary_targets.mean())


def _numeric_column(flows: Sequence[FlowRecord], name: str) -> np.ndarray:
    return np.array(
        [0.0 if getattr(flow, name) is None else float(getattr(flow, name)) for flow in flows],
        dtype=float,
    )


def _category(flow: FlowRecord, name: str) -> str:
    value = getattr(flow, name)
    return MISSING_TOKEN if value is None else str(value)


def build_feature_schema(train_flows: Sequence[FlowRecord]) -> FeatureSchema:
    """
    Fit vocabularies and scaling bounds on training flows only.

    Raises:
        DatasetError: No training flows
    """
    if not train_flows:
        raise DatasetError("cannot fit a feature schema on zero flows")

    scale_params = {}
    for name in NUMERIC_FEATURES:
        column = _numeric_column(train_flows, name)
        scale_params[name] = (float(column.min()), float(column.max()))

    vocabularies = {}
    for name in CATEGORICAL_FEATURES:
        seen = {_category(flow, name) for flow in train_flows}
        observed = sorted(seen - {MISSING_TOKEN, UNKNOWN_TOKEN})
        if MISSING_TOKEN in seen:
            observed.append(MISSING_TOKEN)
        vocabularies[name] = observed + [UNKNOWN_TOKEN]

    schema = FeatureSchema(
        numeric_features=list(NUMERIC_FEATURES),
        categorical_vocabularies=vocabularies,
        scale_params=scale_params,
    )
    logger.debug(f"Feature schema fitted on {len(train_flows)} flows: {schema.n_features} features")
    return schema


def vectorize(
    flows: Sequence[FlowRecord],
    schema: FeatureSchema,
    class_names: Optional[List[str]] = None,
) -> EncodedDataset:
    """
    Encode flows against a fitted schema.

    Args:
        flows: Flows to encode
        schema: Fitted schema
        class_names: Class ordering to index multi-class targets with; derived
            from ``flows`` when omitted

    Returns:
        EncodedDataset

    Raises:
        DatasetError: A flow's class is not in ``class_names``
    """
    labels = [consolidate_labels(flow) for flow in flows]
    if class_names is None:
        class_names = ordered_class_names(labels)
    class_index = {name: i for i, name in enumerate(class_names)}
    unknown_classes = sorted(set(labels) - set(class_index))
    if unknown_classes:
        raise DatasetError(f"classes not in the class list: {', '.join(unknown_classes)}")

    n_rows = len(flows)
    blocks = []
    for name in schema.numeric_features:
        low, high = schema.scale_params[name]
        column = _numeric_column(flows, name)
        if high > low:
            scaled = np.clip((column - low) / (high - low), 0.0, 1.0)
        else:
            scaled = np.zeros(n_rows)
        blocks.append(scaled.reshape(n_rows, 1))

    for name, vocabulary in schema.categorical_vocabularies.items():
        positions = {value: i for i, value in enumerate(vocabulary)}
        unknown = positions[UNKNOWN_TOKEN]
        one_hot = np.zeros((n_rows, len(vocabulary)))
        hits = [positions.get(_category(flow, name), unknown) for flow in flows]
        one_hot[np.arange(n_rows), hits] = 1.0
        blocks.append(one_hot)

    features = np.hstack(blocks) if n_rows else np.zeros((0, schema.n_features))
    return EncodedDataset(
        features=features,
        binary_targets=np.array([int(flow.is_malicious) for flow in flows], dtype=int),
        multiclass_targets=np.array([class_index[label] for label in labels], dtype=int),
        class_names=list(class_names),
        schema=schema,
    )
