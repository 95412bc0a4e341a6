"""
Accuracy, precision, recall, FPR and F1 with macro-averaging.

Any 0/0 ratio is defined as 0 so that classes a model ignores pull the
macro average down.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from detector.exceptions import DatasetError
from detector.preprocessing.labels import Scenario
from .confusion import ConfusionMatrix, confusion


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


@dataclass(frozen=True)
class ClassMetrics:
    """One-vs-rest metrics of a single class."""
    precision: float
    recall: float
    fpr: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, tn: int) -> 'ClassMetrics':
        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        return cls(
            precision=precision,
            recall=recall,
            fpr=_ratio(fp, fp + tn),
            f1=_ratio(2 * precision * recall, precision + recall),
        )

    def to_dict(self) -> Dict[str, float]:
        return {'precision': self.precision, 'recall': self.recall, 'fpr': self.fpr, 'f1': self.f1}


@dataclass(frozen=True)
class BinaryMetrics(ClassMetrics):
    """Positive-class metrics plus global accuracy."""
    accuracy: float = 0.0


@dataclass
class MetricReport:
    """
    Global accuracy, per-class metrics and their unweighted means.

    Attributes:
        accuracy: Share of correct predictions
        per_class: Class name -> one-vs-rest metrics
        macro_*: Unweighted means over classes
        binary: Positive-class metrics, set for the binary scenario
    """
    accuracy: float
    per_class: Dict[str, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_fpr: float
    macro_f1: float
    binary: Optional[BinaryMetrics] = None
    confusion: Optional[ConfusionMatrix] = field(default=None, repr=False)

    @property
    def score(self) -> float:
        """Headline score: macro-F1 as a percentage."""
        return self.macro_f1 * 100.0

    def as_row(self) -> Dict[str, float]:
        return {
            'accuracy': self.accuracy,
            'macro_precision': self.macro_precision,
            'macro_recall': self.macro_recall,
            'macro_fpr': self.macro_fpr,
            'macro_f1': self.macro_f1,
        }


def binary_metrics(cm: ConfusionMatrix, positive: int = 1) -> BinaryMetrics:
    """
    Metrics of a 2x2 matrix with ``positive`` as the positive class.

    Raises:
        DatasetError: Matrix is not 2x2
    """
    if cm.n_classes != 2:
        raise DatasetError(f"binary metrics need a 2x2 matrix, got {cm.n_classes} classes")
    tp, fp, fn, tn = cm.one_vs_rest(positive)
    metrics = ClassMetrics.from_counts(tp, fp, fn, tn)
    return BinaryMetrics(
        precision=metrics.precision,
        recall=metrics.recall,
        fpr=metrics.fpr,
        f1=metrics.f1,
        accuracy=_ratio(tp + tn, cm.total),
    )


def macro_metrics(cm: ConfusionMatrix) -> MetricReport:
    """
    Per-class one-vs-rest metrics averaged without weights.

    Every class gets a ``per_class`` entry, but the means run only over
    classes that occur in the truth or the predictions. A class missing from
    both (a fold that holds no sample of a rare class) leaves the average
    untouched; a class the model ignores or invents still scores 0.

    Raises:
        DatasetError: Fewer than two classes
    """
    if cm.n_classes < 2:
        raise DatasetError("macro metrics need at least two classes")

    per_class = {
        name: ClassMetrics.from_counts(*cm.one_vs_rest(i))
        for i, name in enumerate(cm.class_names)
    }
    values = [per_class[cm.class_names[i]] for i in cm.observed()]
    return MetricReport(
        accuracy=_ratio(int(np.trace(cm.counts)), cm.total),
        per_class=per_class,
        macro_precision=float(np.mean([m.precision for m in values])),
        macro_recall=float(np.mean([m.recall for m in values])),
        macro_fpr=float(np.mean([m.fpr for m in values])),
        macro_f1=float(np.mean([m.f1 for m in values])),
        confusion=cm,
    )


def evaluate_predictions(
    y_true: Sequence[int],
    y_pred: Sequence[int],
    class_names: List[str],
    scenario: Scenario = Scenario.MULTICLASS,
) -> MetricReport:
    """Score predictions in one call; binary reports also carry positive-class metrics."""
    cm = confusion(y_true, y_pred, len(class_names), class_names)
    report = macro_metrics(cm)
    if scenario == Scenario.BINARY:
        report.binary = binary_metrics(cm, positive=1)
    return report
