"""
Confusion-matrix bookkeeping and macro-averaged metrics.
"""
from .confusion import ConfusionMatrix, confusion
from .report import BinaryMetrics, ClassMetrics, MetricReport, binary_metrics, evaluate_predictions, macro_metrics

__all__ = [
    'BinaryMetrics',
    'ClassMetrics',
    'ConfusionMatrix',
    'MetricReport',
    'binary_metrics',
    'confusion',
    'evaluate_predictions',
    'macro_metrics',
]
