"""
Synthetic builders shared by the test modules.
"""
import io
from typing import Dict, List, Optional, Sequence

import numpy as np

from detector.flows import BinaryLabel, FlowRecord, write_conn_log
from detector.learners import Learner
from detector.preprocessing import EncodedDataset, FeatureSchema


def make_flow(index: int = 0, label: Optional[str] = None, **overrides) -> FlowRecord:
    """
    One flow; ``label`` is a detailed label (malicious) or None (benign).
    """
    values = dict(
        ts=1_545_000_000.0 + index,
        uid=f"C{index:06d}",
        orig_h='192.168.100.103',
        orig_p=40_000 + index % 20_000,
        resp_h='10.0.0.1',
        resp_p=23 if label else 80,
        proto='tcp',
        conn_state='S0' if label else 'SF',
        missed_bytes=0,
        orig_pkts=1 if label else 5 + index % 7,
        orig_ip_bytes=40 if label else 400 + index % 97,
        resp_pkts=0 if label else 4,
        resp_ip_bytes=0 if label else 900,
        binary_label=BinaryLabel.MALICIOUS if label else BinaryLabel.BENIGN,
        service=None if label else 'http',
        duration=None if label else 0.5 + (index % 11) / 10,
        orig_bytes=None if label else 120,
        resp_bytes=None if label else 600,
        history='S' if label else 'ShADadFf',
        detailed_label=label,
    )
    values.update(overrides)
    return FlowRecord(**values)


def make_flows(composition: Dict[Optional[str], int]) -> List[FlowRecord]:
    """
    Flows per detailed label (None = benign), interleaved class by class.
    """
    flows = []
    index = 0
    for label, count in composition.items():
        for _ in range(count):
            flows.append(make_flow(index, label))
            index += 1
    return flows


def conn_log_text(records: Sequence[FlowRecord]) -> str:
    stream = io.StringIO()
    write_conn_log(records, stream)
    return stream.getvalue()


def blobs(n_per_class: int, centers: Sequence[Sequence[float]], scale: float = 0.5, seed: int = 0):
    """Gaussian blobs; returns (X, y) with y the center index."""
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(center, scale, size=(n_per_class, len(center))) for center in centers])
    y = np.repeat(np.arange(len(centers)), n_per_class)
    return X, y


def xor_data(seed: int = 0, jitter: float = 0.05):
    """
    Jittered XOR corners with uneven cluster sizes, shuffled.

    Label 0 sits at (0, 0) and (1, 1), label 1 at (0, 1) and (1, 0).
    """
    rng = np.random.default_rng(seed)
    corners = [((0, 0), 0, 60), ((1, 1), 0, 40), ((0, 1), 1, 50), ((1, 0), 1, 50)]
    X = np.vstack([rng.normal(corner, jitter, size=(count, 2)) for corner, _, count in corners])
    y = np.concatenate([np.full(count, label) for _, label, count in corners])
    order = rng.permutation(len(y))
    return X[order], y[order]


def encoded_dataset(
    X: np.ndarray,
    multiclass: np.ndarray,
    class_names: Optional[List[str]] = None,
) -> EncodedDataset:
    """Wrap a plain matrix; class 0 is benign, every other class malicious."""
    X = np.asarray(X, dtype=float)
    multiclass = np.asarray(multiclass, dtype=int)
    if class_names is None:
        class_names = ['Benign'] + [f"Attack{i}" for i in range(1, int(multiclass.max()) + 1)]
    schema = FeatureSchema(
        numeric_features=[f"f{i}" for i in range(X.shape[1])],
        categorical_vocabularies={},
        scale_params={f"f{i}": (0.0, 1.0) for i in range(X.shape[1])},
    )
    return EncodedDataset(
        features=X,
        binary_targets=(multiclass > 0).astype(int),
        multiclass_targets=multiclass,
        class_names=list(class_names),
        schema=schema,
    )


class MemorizingLearner(Learner):
    """Learns the label of every value of feature 0."""

    kind = 'memorize'
    display_name = 'Memorize'

    def _fit(self, X, y, n_classes):
        self.table = {float(value): int(label) for value, label in zip(X[:, 0], y)}

    def _predict(self, X):
        return np.array([self.table.get(float(value), 0) for value in X[:, 0]], dtype=int)

    def model_to_dict(self):
        return {'table': [[k, v] for k, v in self.table.items()]}

    def model_from_dict(self, data):
        self.table = {float(k): int(v) for k, v in data['table']}


class ConstantLearner(Learner):
    """Predicts the class given by the ``label`` parameter."""

    kind = 'constant'
    display_name = 'Constant'

    def _fit(self, X, y, n_classes):
        pass

    def _predict(self, X):
        return np.full(X.shape[0], self.params.get('label', 0), dtype=int)

    def model_to_dict(self):
        return {}

    def model_from_dict(self, data):
        pass


class FailingLearner(Learner):
    """Raises during training."""

    kind = 'failing'
    display_name = 'Failing'

    def _fit(self, X, y, n_classes):
        from detector.exceptions import TrainingError
        raise TrainingError("diverged")

    def _predict(self, X):
        return np.zeros(X.shape[0], dtype=int)

    def model_to_dict(self):
        return {}

    def model_from_dict(self, data):
        pass


def stub_factory(config: Dict) -> Learner:
    """Factory for the harness: ``config['mode']`` picks a test learner."""
    mode = config.get('mode', 'memorize')
    if mode == 'memorize':
        return MemorizingLearner()
    if mode == 'fail':
        return FailingLearner()
    return ConstantLearner(label=config.get('label', 0))
