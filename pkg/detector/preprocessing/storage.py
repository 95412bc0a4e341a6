"""
On-disk form of encoded datasets.

A prepared dataset directory holds ``train.csv``, ``eval.csv`` and
``schema.json``. CSV columns are the schema's feature names followed by
``label_binary`` and ``label_multi``.
"""
import logging
from pathlib import Path
from typing import List, Tuple, Union

import pandas as pd

from detector.exceptions import DatasetError
from detector.utils.serialization import read_json, write_json
from .encoding import EncodedDataset, FeatureSchema

logger = logging.getLogger(__name__)

LABEL_COLUMNS = ['label_binary', 'label_multi']
TRAIN_FILE = 'train.csv'
EVAL_FILE = 'eval.csv'
SCHEMA_FILE = 'schema.json'
FLOAT_FORMAT = '%.10g'

PathLike = Union[str, Path]


def save_schema(schema: FeatureSchema, class_names: List[str], path: PathLike) -> Path:
    """Write the schema and class ordering as one JSON document."""
    return write_json(path, {'schema': schema.to_dict(), 'class_names': list(class_names)})


def load_schema(path: PathLike) -> Tuple[FeatureSchema, List[str]]:
    """
    Read a schema document.

    Returns:
        tuple: (FeatureSchema, class names)
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"schema file not found: {path}")
    document = read_json(path)
    return FeatureSchema.from_dict(document['schema']), list(document['class_names'])


def save_dataset_csv(dataset: EncodedDataset, path: PathLike) -> Path:
    """Write features and both label columns to CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(dataset.features, columns=dataset.schema.feature_names)
    frame['label_binary'] = dataset.binary_targets
    frame['label_multi'] = dataset.multiclass_targets
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return path


def load_dataset_csv(path: PathLike, schema: FeatureSchema, class_names: List[str]) -> EncodedDataset:
    """
    Read a dataset CSV written by ``save_dataset_csv``.

    Raises:
        DatasetError: Missing file or columns that disagree with the schema
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"dataset file not found: {path}")
    frame = pd.read_csv(path)
    expected = schema.feature_names + LABEL_COLUMNS
    if list(frame.columns) != expected:
        raise DatasetError(f"{path}: columns do not match the feature schema")

    return EncodedDataset(
        features=frame[schema.feature_names].to_numpy(dtype=float),
        binary_targets=frame['label_binary'].to_numpy(dtype=int),
        multiclass_targets=frame['label_multi'].to_numpy(dtype=int),
        class_names=class_names,
        schema=schema,
    )


def save_prepared(train: EncodedDataset, evaluation: EncodedDataset, directory: PathLike) -> Path:
    """Write a train/eval pair plus schema into ``directory``."""
    directory = Path(directory)
    save_dataset_csv(train, directory / TRAIN_FILE)
    save_dataset_csv(evaluation, directory / EVAL_FILE)
    save_schema(train.schema, train.class_names, directory / SCHEMA_FILE)
    logger.info(f"Wrote prepared dataset to {directory} ({len(train)} train / {len(evaluation)} eval rows)")
    return directory


def load_prepared(directory: PathLike) -> Tuple[EncodedDataset, EncodedDataset]:
    """Read a train/eval pair written by ``save_prepared``."""
    directory = Path(directory)
    schema, class_names = load_schema(directory / SCHEMA_FILE)
    train = load_dataset_csv(directory / TRAIN_FILE, schema, class_names)
    evaluation = load_dataset_csv(directory / EVAL_FILE, schema, class_names)
    if not len(train):
        raise DatasetError(f"{directory}: training set is empty")
    return train, evaluation
