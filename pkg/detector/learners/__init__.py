"""
Detectors.

Importing this package registers every learner in ``LEARNERS``.
"""
from .base import LEARNERS, Learner, create_learner, load_learner, register_learner, save_learner
from .drl import ReinforcementDetector
from .gbdt import LeafWiseBoosting, LevelWiseBoosting
from .iforest import IsolationForest
from .lof import LocalOutlierFactor
from .svm import LinearSvm

MODEL_ORDER = ['svm', 'xgboost', 'lightgbm', 'iforest', 'lof', 'drl']
SUPERVISED_KINDS = ['svm', 'xgboost', 'lightgbm']
UNSUPERVISED_KINDS = ['iforest', 'lof']

__all__ = [
    # Registry
    'LEARNERS',
    'MODEL_ORDER',
    'SUPERVISED_KINDS',
    'UNSUPERVISED_KINDS',
    'Learner',
    'create_learner',
    'load_learner',
    'register_learner',
    'save_learner',
    # Learners
    'IsolationForest',
    'LeafWiseBoosting',
    'LevelWiseBoosting',
    'LinearSvm',
    'LocalOutlierFactor',
    'ReinforcementDetector',
]
