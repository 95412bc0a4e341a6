"""
Zeek conn.log parser.

Reads labeled ``conn.log`` captures (IoT-23 flavour) into FlowRecords and
writes records back out in the same TSV dialect.
"""
import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TextIO, Union

from detector.exceptions import CaptureFormatError, InvalidFlowError, MalformedRowError
from .record import BinaryLabel, FlowRecord

logger = logging.getLogger(__name__)

DEFAULT_SEPARATOR = '\t'
DEFAULT_UNSET = '-'
DEFAULT_EMPTY = '(empty)'

# Column order of an IoT-23 conn.log.labeled file
STANDARD_FIELDS = [
    'ts', 'uid', 'id.orig_h', 'id.orig_p', 'id.resp_h', 'id.resp_p', 'proto', 'service',
    'duration', 'orig_bytes', 'resp_bytes', 'conn_state', 'local_orig', 'local_resp',
    'missed_bytes', 'history', 'orig_pkts', 'orig_ip_bytes', 'resp_pkts', 'resp_ip_bytes',
    'tunnel_parents', 'label', 'detailed-label',
]

# Zeek column name -> FlowRecord attribute
FIELD_ALIASES = {
    'id.orig_h': 'orig_h',
    'id.orig_p': 'orig_p',
    'id.resp_h': 'resp_h',
    'id.resp_p': 'resp_p',
    'label': 'binary_label',
    'detailed-label': 'detailed_label',
    'detailed_label': 'detailed_label',
}

REQUIRED_ATTRIBUTES = (
    'ts', 'uid', 'orig_h', 'orig_p', 'resp_h', 'resp_p', 'proto', 'conn_state',
    'missed_bytes', 'orig_pkts', 'orig_ip_bytes', 'resp_pkts', 'resp_ip_bytes', 'binary_label',
)


def _parse_bool(token: str) -> bool:
    if token in ('T', 'true', 'True'):
        return True
    if token in ('F', 'false', 'False'):
        return False
    raise ValueError(f"not a Zeek boolean: {token!r}")


CONVERTERS: Dict[str, Callable[[str], object]] = {
    'ts': float,
    'duration': float,
    'orig_p': int,
    'resp_p': int,
    'orig_bytes': int,
    'resp_bytes': int,
    'missed_bytes': int,
    'orig_pkts': int,
    'orig_ip_bytes': int,
    'resp_pkts': int,
    'resp_ip_bytes': int,
    'local_orig': _parse_bool,
    'local_resp': _parse_bool,
    'binary_label': BinaryLabel.parse,
}

RECORD_ATTRIBUTES = frozenset(FlowRecord.__dataclass_fields__)


def attribute_for(column: str) -> str:
    """Map a Zeek column name onto the FlowRecord attribute it fills."""
    return FIELD_ALIASES.get(column, column)


def _unescape(value: str) -> str:
    return value.encode('ascii').decode('unicode_escape')


class ConnLogParser:
    """
    Parser for Zeek TSV conn logs.

    Handles the ``#separator``, ``#unset_field`` and ``#empty_field``
    metadata lines and the IoT-23 quirk where the trailing label columns are
    separated by runs of spaces instead of tabs.
    """

    def parse(self, source: Iterable[str]) -> List[FlowRecord]:
        """
        Parse a line stream into flow records, in file order.

        Args:
            source: Lines of a Zeek log (newlines optional)

        Returns:
            list: One FlowRecord per data row

        Raises:
            CaptureFormatError: A data row appears before any ``#fields`` line
            MalformedRowError: A row cannot be parsed (carries the line number)
        """
        separator = DEFAULT_SEPARATOR
        unset = DEFAULT_UNSET
        empty = DEFAULT_EMPTY
        columns: Optional[List[str]] = None
        records: List[FlowRecord] = []

        for line_number, raw_line in enumerate(source, start=1):
            line = raw_line.rstrip('\r\n')
            if not line.strip():
                continue

            if line.startswith('#'):
                parts = line.split(None, 1)
                directive = parts[0]
                value = parts[1] if len(parts) > 1 else ''
                if directive == '#separator':
                    separator = _unescape(value.strip())
                elif directive == '#unset_field':
                    unset = value.strip()
                elif directive == '#empty_field':
                    empty = value.strip()
                elif directive == '#fields':
                    columns = self._parse_header(value, separator)
                continue

            if columns is None:
                raise CaptureFormatError(f"line {line_number}: data row before any #fields header")

            records.append(self._parse_row(line, line_number, columns, separator, unset, empty))

        logger.debug(f"Parsed {len(records)} flow records")
        return records

    def _parse_header(self, value: str, separator: str) -> List[str]:
        # Header names never contain whitespace, so any space-joined names
        # (the same IoT-23 quirk) can be split apart safely.
        columns = [name for chunk in value.split(separator) for name in chunk.split()]
        attributes = {attribute_for(column) for column in columns}
        missing = [name for name in REQUIRED_ATTRIBUTES if name not in attributes]
        if missing:
            raise CaptureFormatError(f"#fields header lacks required columns: {', '.join(missing)}")
        return columns

    def _split_row(self, line: str, expected: int, separator: str) -> List[str]:
        tokens = line.split(separator)
        if len(tokens) < expected:
            tokens = tokens[:-1] + tokens[-1].split()
        return tokens

    def _parse_row(
        self,
        line: str,
        line_number: int,
        columns: Sequence[str],
        separator: str,
        unset: str,
        empty: str,
    ) -> FlowRecord:
        tokens = self._split_row(line, len(columns), separator)
        if len(tokens) != len(columns):
            raise MalformedRowError(line_number, f"expected {len(columns)} columns, found {len(tokens)}")

        values = {}
        for column, token in zip(columns, tokens):
            attribute = attribute_for(column)
            if attribute not in RECORD_ATTRIBUTES:
                continue
            if token in (unset, empty):
                if attribute in REQUIRED_ATTRIBUTES:
                    raise MalformedRowError(line_number, f"required column {column} is missing")
                values[attribute] = None
                continue
            converter = CONVERTERS.get(attribute)
            try:
                values[attribute] = converter(token) if converter else token
            except (ValueError, InvalidFlowError) as e:
                raise MalformedRowError(line_number, f"bad value for {column}: {e}") from e

        if values['binary_label'] is BinaryLabel.MALICIOUS and not values.get('detailed_label'):
            raise MalformedRowError(line_number, "malicious flow without a detailed label")

        try:
            return FlowRecord(**values)
        except InvalidFlowError as e:
            raise MalformedRowError(line_number, str(e)) from e


def parse_conn_log(source: Iterable[str]) -> List[FlowRecord]:
    """Parse a Zeek conn.log line stream into flow records."""
    return ConnLogParser().parse(source)


def parse_conn_log_file(path: Union[str, Path]) -> List[FlowRecord]:
    """Parse a UTF-8 Zeek conn.log file."""
    with open(path, 'r', encoding='utf-8') as stream:
        return parse_conn_log(stream)


def _format_value(value) -> str:
    if value is None:
        return DEFAULT_UNSET
    if isinstance(value, BinaryLabel):
        return value.value
    if isinstance(value, bool):
        return 'T' if value else 'F'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_conn_row(record: FlowRecord, fields: Sequence[str] = STANDARD_FIELDS) -> str:
    """
    Serialize a record as a tab-separated row for the given column list.

    Columns without a FlowRecord counterpart (``tunnel_parents``) are written
    as unset.
    """
    tokens = []
    for column in fields:
        attribute = attribute_for(column)
        value = getattr(record, attribute) if attribute in RECORD_ATTRIBUTES else None
        tokens.append(_format_value(value))
    return DEFAULT_SEPARATOR.join(tokens)


def write_conn_log(records: Iterable[FlowRecord], stream: TextIO, fields: Sequence[str] = STANDARD_FIELDS) -> int:
    """
    Write records as a Zeek conn log with a minimal header.

    Returns:
        int: Number of data rows written
    """
    stream.write('#separator \\x09\n')
    stream.write(f"#unset_field{DEFAULT_SEPARATOR}{DEFAULT_UNSET}\n")
    stream.write(f"#empty_field{DEFAULT_SEPARATOR}{DEFAULT_EMPTY}\n")
    stream.write(f"#path{DEFAULT_SEPARATOR}conn\n")
    stream.write('#fields' + DEFAULT_SEPARATOR + DEFAULT_SEPARATOR.join(fields) + '\n')
    count = 0
    for record in records:
        stream.write(format_conn_row(record, fields) + '\n')
        count += 1
    return count
