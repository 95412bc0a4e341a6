"""
Gradient-boosted decision trees with a cross-entropy objective.
"""
from .config import (
    EXACT,
    GOSS,
    HISTOGRAM,
    LEAF_WISE,
    LEVEL_WISE,
    GbdtConfig,
    leaf_wise_config,
    level_wise_config,
)
from .ensemble import GbdtEnsemble, LeafWiseBoosting, LevelWiseBoosting, gbdt_predict, gbdt_train
from .goss import goss_sample
from .objective import cross_entropy, logistic_gradients
from .splits import SplitCandidate, find_best_split, leaf_value, split_gain
from .tree import TreeNode, grow_tree, predict_tree, validate_tree

__all__ = [
    # Configuration
    'EXACT',
    'GOSS',
    'HISTOGRAM',
    'LEAF_WISE',
    'LEVEL_WISE',
    'GbdtConfig',
    'leaf_wise_config',
    'level_wise_config',
    # Objective
    'cross_entropy',
    'logistic_gradients',
    # Splits and trees
    'SplitCandidate',
    'TreeNode',
    'find_best_split',
    'goss_sample',
    'grow_tree',
    'leaf_value',
    'predict_tree',
    'split_gain',
    'validate_tree',
    # Ensemble
    'GbdtEnsemble',
    'LeafWiseBoosting',
    'LevelWiseBoosting',
    'gbdt_predict',
    'gbdt_train',
]
