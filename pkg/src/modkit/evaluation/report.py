"""Cross-session evaluation report: per-strategy metric time series, final
metric table, and paired comparisons, as JSON plus CSV."""

from __future__ import annotations

import csv
import json
import statistics
from pathlib import Path
from typing import Mapping, Optional, Sequence

from ..errors import ValidationError
from .compare import paired_compare
from .metrics import MetricsSnapshot

METRIC_NAMES = ("accuracy", "precision", "recall", "f1")
TICK_SECONDS = 30


def _metric_value(snapshot: MetricsSnapshot, metric: str) -> float:
    return getattr(snapshot.metrics, metric)


def _value_at_tick(
    snapshots: Sequence[MetricsSnapshot], tick: int, metric: str
) -> Optional[float]:
    """Last snapshot at or before the tick, carried forward."""
    value = None
    for snap in snapshots:
        if snap.t_active_seconds <= tick:
            value = _metric_value(snap, metric)
        else:
            break
    return value


def build_report(
    sessions: Sequence[Mapping],
) -> dict:
    """Aggregate session snapshot series into a machine-readable report.

    Each session mapping carries: session_id, strategy, snapshots (a list
    of MetricsSnapshot). Strategies without any session are listed in
    notes rather than fabricated.
    """
    if not sessions:
        raise ValidationError("need at least one session to report on")

    by_strategy: dict[str, list[Mapping]] = {}
    for sess in sessions:
        by_strategy.setdefault(sess["strategy"], []).append(sess)

    strategies_out = {}
    for strategy in ("label", "rule", "prompt"):
        entries = by_strategy.get(strategy)
        if not entries:
            continue
        max_t = max(
            (s.t_active_seconds for e in entries for s in e["snapshots"]), default=0
        )
        series = []
        ticks = list(range(TICK_SECONDS, max_t + 1, TICK_SECONDS))
        for tick in ticks:
            for metric in METRIC_NAMES:
                values = []
                for entry in entries:
                    v = _value_at_tick(entry["snapshots"], tick, metric)
                    if v is not None:
                        values.append(v)
                if values:
                    series.append(
                        {
                            "t_seconds": tick,
                            "metric": metric,
                            "mean": statistics.mean(values),
                            "n": len(values),
                        }
                    )
        finals = {}
        for metric in METRIC_NAMES:
            values = [
                _metric_value(entry["snapshots"][-1], metric)
                for entry in entries
                if entry["snapshots"]
            ]
            if values:
                finals[metric] = {"mean": statistics.mean(values), "n": len(values)}
        strategies_out[strategy] = {"series": series, "final": finals}

    comparisons = []
    strategy_names = sorted(by_strategy)
    for i, first in enumerate(strategy_names):
        for second in strategy_names[i + 1 :]:
            for metric in METRIC_NAMES:
                per_session: dict[str, tuple[Optional[float], Optional[float]]] = {}
                sessions_first = {
                    e["session_id"]: e for e in by_strategy[first] if e["snapshots"]
                }
                sessions_second = {
                    e["session_id"]: e for e in by_strategy[second] if e["snapshots"]
                }
                for sid in set(sessions_first) | set(sessions_second):
                    a = (
                        _metric_value(sessions_first[sid]["snapshots"][-1], metric)
                        if sid in sessions_first
                        else None
                    )
                    b = (
                        _metric_value(sessions_second[sid]["snapshots"][-1], metric)
                        if sid in sessions_second
                        else None
                    )
                    per_session[sid] = (a, b)
                try:
                    comparison = paired_compare(
                        per_session, metric=metric, pair=(first, second)
                    )
                except ValidationError:
                    continue
                comparisons.append(comparison.to_json())

    notes = [
        f"no sessions for strategy: {s}"
        for s in ("label", "rule", "prompt")
        if s not in by_strategy
    ]
    return {
        "strategies": strategies_out,
        "paired_comparisons": comparisons,
        "notes": notes,
        "sessions": sorted({s["session_id"] for s in sessions}),
    }


def write_report(report: dict, out_dir: Path) -> tuple[Path, Path]:
    """Persist report.json and series.csv; returns their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    series_path = out_dir / "series.csv"
    with open(series_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["strategy", "t_seconds", "metric", "mean", "n"])
        for strategy, block in sorted(report["strategies"].items()):
            for row in block["series"]:
                writer.writerow(
                    [strategy, row["t_seconds"], row["metric"], row["mean"], row["n"]]
                )
    return report_path, series_path
