"""
Flow record types.

A FlowRecord is one row of a labeled Zeek ``conn.log``; a CaptureSummary is
the Table-1 style class composition of a capture.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

from detector.exceptions import InvalidFlowError

MAX_PORT = 65535


class BinaryLabel(str, Enum):
    """Binary ground truth of a flow."""

    BENIGN = 'Benign'
    MALICIOUS = 'Malicious'

    @classmethod
    def parse(cls, token: str) -> 'BinaryLabel':
        """Parse a label token case-insensitively."""
        lowered = token.strip().lower()
        for member in cls:
            if member.value.lower() == lowered:
                return member
        raise InvalidFlowError(f"unknown binary label: {token!r}")


@dataclass(frozen=True)
class FlowRecord:
    """One parsed Zeek conn.log row (connection metadata + labels)."""

    ts: float
    uid: str
    orig_h: str
    orig_p: int
    resp_h: str
    resp_p: int
    proto: str
    conn_state: str
    missed_bytes: int
    orig_pkts: int
    orig_ip_bytes: int
    resp_pkts: int
    resp_ip_bytes: int
    binary_label: BinaryLabel
    service: Optional[str] = None
    duration: Optional[float] = None
    orig_bytes: Optional[int] = None
    resp_bytes: Optional[int] = None
    local_orig: Optional[bool] = None
    local_resp: Optional[bool] = None
    history: Optional[str] = None
    detailed_label: Optional[str] = None

    def __post_init__(self):
        for name in ('orig_p', 'resp_p'):
            port = getattr(self, name)
            if not 0 <= port <= MAX_PORT:
                raise InvalidFlowError(f"{name} out of range 0-{MAX_PORT}: {port}")

        for name in ('missed_bytes', 'orig_pkts', 'orig_ip_bytes', 'resp_pkts', 'resp_ip_bytes',
                     'orig_bytes', 'resp_bytes'):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise InvalidFlowError(f"{name} must be non-negative, got {value}")

        if self.duration is not None and self.duration < 0:
            raise InvalidFlowError(f"duration must be non-negative, got {self.duration}")

    @property
    def is_malicious(self) -> bool:
        return self.binary_label is BinaryLabel.MALICIOUS


@dataclass
class CaptureSummary:
    """
    Class composition of a capture.

    Attributes:
        total_samples: Number of flows
        per_class: Consolidated class name -> flow count
        malware_type: Malware family when the capture is catalogued
        capture_name: Catalogue name the summary was built for, if any
    """
    total_samples: int
    per_class: Dict[str, int] = field(default_factory=dict)
    malware_type: Optional[str] = None
    capture_name: Optional[str] = None

    def __post_init__(self):
        if sum(self.per_class.values()) != self.total_samples:
            raise InvalidFlowError(
                f"class counts sum to {sum(self.per_class.values())}, expected {self.total_samples}"
            )

    def catalogue_differences(self) -> Dict[str, tuple]:
        """
        Compare against the published composition of the named capture.

        Returns:
            dict: class name (or 'total') -> (observed, published) for every mismatch;
            empty when the capture is unknown or matches exactly
        """
        from .capture import KNOWN_CAPTURES

        known = KNOWN_CAPTURES.get(self.capture_name or '')
        if known is None:
            return {}

        differences = {}
        if known.total_samples != self.total_samples:
            differences['total'] = (self.total_samples, known.total_samples)
        for name in sorted(set(known.per_class) | set(self.per_class)):
            observed = self.per_class.get(name, 0)
            published = known.per_class.get(name, 0)
            if observed != published:
                differences[name] = (observed, published)
        return differences

    def matches_catalogue(self) -> bool:
        return not self.catalogue_differences()

    def to_dict(self) -> dict:
        return {
            'capture_name': self.capture_name,
            'malware_type': self.malware_type,
            'total_samples': self.total_samples,
            'per_class': dict(sorted(self.per_class.items())),
        }
