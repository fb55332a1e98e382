from .clock import (
    SNAPSHOT_INTERVAL_SECONDS,
    WaitInterval,
    active_seconds,
    build_wait_intervals,
    snapshot_schedule,
    wall_at_active,
)
from .compare import PairedComparison, paired_compare
from .events import (
    DEFAULT_REGISTRY,
    SYSTEM_KINDS,
    USER_ACTION_KINDS,
    ActionEvent,
    ActionKindRegistry,
    EventLog,
)
from .metrics import ConfusionCounts, Metrics, MetricsSnapshot, metrics_from_counts, score
from .report import build_report, write_report

__all__ = [
    "ActionEvent",
    "ActionKindRegistry",
    "ConfusionCounts",
    "DEFAULT_REGISTRY",
    "EventLog",
    "Metrics",
    "MetricsSnapshot",
    "PairedComparison",
    "SNAPSHOT_INTERVAL_SECONDS",
    "SYSTEM_KINDS",
    "USER_ACTION_KINDS",
    "WaitInterval",
    "active_seconds",
    "build_report",
    "build_wait_intervals",
    "metrics_from_counts",
    "paired_compare",
    "score",
    "snapshot_schedule",
    "wall_at_active",
    "write_report",
]
