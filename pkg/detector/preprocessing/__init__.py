"""
Preprocessing stage: labels, subsets, encoding, splitting and storage.
"""
from .encoding import (
    CATEGORICAL_FEATURES,
    NUMERIC_FEATURES,
    EncodedDataset,
    FeatureSchema,
    build_feature_schema,
    vectorize,
)
from .labels import (
    BENIGN,
    MALICIOUS,
    Scenario,
    class_counts,
    class_of,
    consolidate_labels,
    drop_single_sample_classes,
    multiclass_eligible,
    ordered_class_names,
)
from .pipeline import DatasetPreparationService, PreparedDataset, prepare_dataset
from .splitting import (
    Fold,
    SplitSpec,
    contamination_for,
    make_folds,
    split_indices,
    split_train_eval,
    subsample_contamination,
)
from .storage import load_dataset_csv, load_prepared, load_schema, save_dataset_csv, save_prepared, save_schema
from .subsets import SUBSET_TARGETS, carve_subset, carve_subsets

__all__ = [
    # Labels
    'BENIGN',
    'MALICIOUS',
    'Scenario',
    'class_counts',
    'class_of',
    'consolidate_labels',
    'drop_single_sample_classes',
    'multiclass_eligible',
    'ordered_class_names',
    # Subsets
    'SUBSET_TARGETS',
    'carve_subset',
    'carve_subsets',
    # Encoding
    'CATEGORICAL_FEATURES',
    'NUMERIC_FEATURES',
    'EncodedDataset',
    'FeatureSchema',
    'build_feature_schema',
    'vectorize',
    # Splitting
    'Fold',
    'SplitSpec',
    'contamination_for',
    'make_folds',
    'split_indices',
    'split_train_eval',
    'subsample_contamination',
    # Pipeline
    'DatasetPreparationService',
    'PreparedDataset',
    'prepare_dataset',
    # Storage
    'load_dataset_csv',
    'load_prepared',
    'load_schema',
    'save_dataset_csv',
    'save_prepared',
    'save_schema',
]
