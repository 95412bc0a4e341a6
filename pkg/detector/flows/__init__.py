"""
Flow data - Zeek conn.log ingestion and capture summaries.
"""
from .record import BinaryLabel, FlowRecord, CaptureSummary
from .conn_log import (
    ConnLogParser,
    STANDARD_FIELDS,
    parse_conn_log,
    parse_conn_log_file,
    format_conn_row,
    write_conn_log,
)
from .capture import KNOWN_CAPTURES, DATASET_ORDER, KnownCapture, summarize_capture

__all__ = [
    'BinaryLabel',
    'FlowRecord',
    'CaptureSummary',
    'ConnLogParser',
    'STANDARD_FIELDS',
    'parse_conn_log',
    'parse_conn_log_file',
    'format_conn_row',
    'write_conn_log',
    'KNOWN_CAPTURES',
    'DATASET_ORDER',
    'KnownCapture',
    'summarize_capture',
]
