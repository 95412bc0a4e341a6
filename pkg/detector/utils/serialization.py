"""
JSON persistence helpers built on orjson.

Documents are written with sorted keys and two-space indentation so that
identical inputs always produce identical bytes.
"""
from pathlib import Path
from typing import Any, Union

import orjson

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def dumps(document: Any) -> bytes:
    """Serialize a document to stable JSON bytes."""
    return orjson.dumps(document, option=JSON_OPTIONS)


def loads(data: Union[bytes, str]) -> Any:
    """Parse JSON bytes or text."""
    return orjson.loads(data)


def write_json(path: Union[str, Path], document: Any) -> Path:
    """
    Write a document to ``path``, creating parent directories.

    Returns:
        Path: The written file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dumps(document) + b'\n')
    return path


def read_json(path: Union[str, Path]) -> Any:
    """Read a JSON document from ``path``."""
    return loads(Path(path).read_bytes())


def compact_dumps(document: Any) -> str:
    """Single-line JSON text with sorted keys, for CSV cells."""
    return orjson.dumps(document, option=orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY).decode()
