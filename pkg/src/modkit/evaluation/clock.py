"""Active-time accounting: wall time minus backend waits.

Snapshots fire at each 30 seconds of active time; a session that ends
mid-interval still gets a final capture at its end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ValidationError

SNAPSHOT_INTERVAL_SECONDS = 30.0


@dataclass(frozen=True)
class WaitInterval:
    start: float
    end: float


def build_wait_intervals(
    events: Sequence[tuple[str, float]], *, end_ts: float | None = None
) -> list[WaitInterval]:
    """Merge a pause/resume event stream into top-level wait intervals.

    Nested pauses are allowed; an unmatched resume is an error; a pause
    still open at the end of the stream extends to end_ts when given.
    """
    intervals: list[WaitInterval] = []
    depth = 0
    opened = 0.0
    last_ts = float("-inf")
    for kind, ts in events:
        if ts < last_ts:
            raise ValidationError("pause/resume events out of order")
        last_ts = ts
        if kind == "pause":
            if depth == 0:
                opened = ts
            depth += 1
        elif kind == "resume":
            if depth == 0:
                raise ValidationError("resume without a matching pause")
            depth -= 1
            if depth == 0:
                intervals.append(WaitInterval(opened, ts))
        else:
            raise ValidationError(f"unknown clock event kind: {kind}")
    if depth > 0:
        if end_ts is None:
            raise ValidationError("pause still open at end of stream")
        intervals.append(WaitInterval(opened, max(opened, end_ts)))
    return intervals


def active_seconds(
    start_ts: float, at_ts: float, waits: Sequence[WaitInterval]
) -> float:
    """Active time accumulated in [start_ts, at_ts], excluding waits."""
    if at_ts < start_ts:
        raise ValidationError("query instant precedes the clock start")
    total = at_ts - start_ts
    for w in waits:
        lo = max(w.start, start_ts)
        hi = min(w.end, at_ts)
        if hi > lo:
            total -= hi - lo
    return total


def wall_at_active(
    start_ts: float,
    target_active: float,
    waits: Sequence[WaitInterval],
) -> float:
    """The earliest wall instant at which active time reaches the target."""
    remaining = target_active
    cursor = start_ts
    for w in sorted(waits, key=lambda w: w.start):
        if w.end <= cursor:
            continue
        gap = max(0.0, w.start - cursor)
        if remaining <= gap:
            return cursor + remaining
        remaining -= gap
        cursor = max(cursor, w.end)
    return cursor + remaining


def snapshot_schedule(
    start_ts: float,
    end_ts: float,
    waits: Sequence[WaitInterval],
    interval: float = SNAPSHOT_INTERVAL_SECONDS,
) -> list[tuple[int, float]]:
    """Capture points as (t_active_seconds, wall_ts).

    One capture per full interval of active time, plus a final capture at
    the session end when it falls mid-interval.
    """
    total_active = active_seconds(start_ts, end_ts, waits)
    schedule: list[tuple[int, float]] = []
    t = interval
    while t <= total_active:
        schedule.append((int(t), wall_at_active(start_ts, t, waits)))
        t += interval
    final_t = int(total_active)
    if not schedule or final_t > schedule[-1][0]:
        schedule.append((final_t, end_ts))
    return schedule
