"""Snapshot computation by replay.

The series is a pure function of (event log, verdict cache): we walk the
log once, and at each 30-second active-time boundary capture the classifier
state current at that instant, score it against the session's ground truth
on the test split, and serialize it. Recomputing over the same inputs is
byte-identical, which is the replay guarantee the harness tests.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..corpus import Corpus
from ..errors import ValidationError
from ..evaluation import (
    ActionEvent,
    MetricsSnapshot,
    build_wait_intervals,
    score,
    snapshot_schedule,
)
from ..labeling import CachingEmbedder
from ..prompts import PromptVerdictCache
from .state import SessionState


def _strategy_window(
    events: Sequence[ActionEvent], strategy: str
) -> tuple[float, float]:
    """Authoring window: open to finish (falling back to close, then to the
    last event). Review time after finishing does not count."""
    opened = finished = closed = None
    for event in events:
        if event.strategy == strategy:
            if event.kind == "strategy_opened":
                opened = event.ts
            elif event.kind == "strategy_finished":
                finished = event.ts
            elif event.kind == "strategy_closed":
                closed = event.ts
    if opened is None:
        raise ValidationError(f"strategy {strategy} was never opened")
    end = finished if finished is not None else closed
    if end is None:
        end = events[-1].ts
    return opened, end


def _wait_events(
    events: Sequence[ActionEvent], strategy: str, start: float, end: float
) -> list:
    stream = []
    for event in events:
        if event.strategy != strategy or not (start <= event.ts <= end):
            continue
        if event.kind == "backend_wait_start":
            stream.append(("pause", event.ts))
        elif event.kind == "backend_wait_end":
            stream.append(("resume", event.ts))
    return stream


def compute_snapshots(
    events: Sequence[ActionEvent],
    corpus: Corpus,
    embedder: CachingEmbedder,
    cache: PromptVerdictCache,
    strategy: str,
    provider=None,
    *,
    batch_size: int = 10,
) -> list[MetricsSnapshot]:
    """Replay the log and capture scored snapshots for one strategy.

    With provider=None prompt verdicts come from the cache alone, which is
    the replay mode; passing a provider fills gaps (and the cache) instead.
    """
    if not events:
        raise ValidationError("no events to snapshot")
    start, end = _strategy_window(events, strategy)
    waits = build_wait_intervals(
        _wait_events(events, strategy, start, end), end_ts=end
    )
    schedule = snapshot_schedule(start, end, waits)

    state = SessionState(corpus, embedder)
    snapshots: list[MetricsSnapshot] = []
    idx = 0
    for t_active, wall in schedule:
        while idx < len(events) and events[idx].ts <= wall:
            state.apply(events[idx])
            idx += 1
        snapshots.append(
            _capture(state, strategy, t_active, wall, cache, provider, batch_size)
        )
    return snapshots


def _capture(
    state: SessionState,
    strategy: str,
    t_active: int,
    wall: float,
    cache: PromptVerdictCache,
    provider,
    batch_size: int,
) -> MetricsSnapshot:
    test_ids = list(state.split.test_ids) if state.split else []
    truth = {cid: lab for cid, lab in state.ground_truth.items() if cid in set(test_ids)}
    predictions = state.predict(
        strategy,
        list(truth.keys()),
        cache=cache,
        provider=provider,
        batch_size=batch_size,
        untrained_keeps=True,
    )
    counts, metrics = score(predictions, truth)
    return MetricsSnapshot(
        session_id=state.session_id,
        strategy=strategy,
        t_active_seconds=t_active,
        wall_ts=wall,
        counts=counts,
        metrics=metrics,
        classifier_state=state.classifier_state(strategy),
    )
