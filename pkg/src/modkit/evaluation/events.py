"""Authoring-action event log: an append-only, durable JSON-Lines record of
every user interaction and system transition, replayable to reconstruct
classifier state at any point in time."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from ..errors import ValidationError

# User interactions named in the authoring flows. The registry is open:
# new kinds may be registered, never removed.
USER_ACTION_KINDS = (
    "label_example",
    "load_more_examples",
    "create_rule",
    "edit_rule",
    "delete_rule",
    "ask_synonyms",
    "toggle_variants",
    "create_prompt",
    "edit_prompt",
    "delete_prompt",
    "improve_prompt",
    "add_fewshot_example",
    "apply_classifier",
    "review_example",
    "filter_view",
    "ground_truth_label",
)

SYSTEM_KINDS = (
    "session_created",
    "ground_truth_finalized",
    "strategy_opened",
    "strategy_finished",
    "strategy_closed",
    "backend_wait_start",
    "backend_wait_end",
)


class ActionKindRegistry:
    """Append-only registry of event kinds."""

    def __init__(self, seed_defaults: bool = True):
        self._kinds: dict[str, bool] = {}
        if seed_defaults:
            for kind in USER_ACTION_KINDS:
                self._kinds[kind] = True
            for kind in SYSTEM_KINDS:
                self._kinds[kind] = False

    def register(self, kind: str, user_action: bool = True) -> None:
        if not kind or not kind.strip():
            raise ValidationError("event kind must be non-empty")
        existing = self._kinds.get(kind)
        if existing is not None and existing != user_action:
            raise ValidationError(f"kind {kind} already registered differently")
        self._kinds[kind] = user_action

    def is_registered(self, kind: str) -> bool:
        return kind in self._kinds

    def is_user_action(self, kind: str) -> bool:
        return self._kinds.get(kind, False)

    def kinds(self) -> frozenset:
        return frozenset(self._kinds)


DEFAULT_REGISTRY = ActionKindRegistry()


@dataclass(frozen=True)
class ActionEvent:
    ts: float
    session_id: str
    kind: str
    strategy: Optional[str] = None
    payload: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "ts": self.ts,
            "session_id": self.session_id,
            "kind": self.kind,
            "strategy": self.strategy,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, record: dict) -> "ActionEvent":
        return cls(
            ts=record["ts"],
            session_id=record["session_id"],
            kind=record["kind"],
            strategy=record.get("strategy"),
            payload=record.get("payload", {}),
        )


class EventLog:
    """Append-only JSON-Lines log with monotone timestamps.

    Appends are flushed and fsynced before returning, so an acknowledged
    event survives a crash.
    """

    def __init__(
        self,
        path: Path,
        registry: Optional[ActionKindRegistry] = None,
        *,
        durable: bool = True,
    ):
        self.path = Path(path)
        self.registry = registry or DEFAULT_REGISTRY
        self.durable = durable
        self._last_ts = float("-inf")
        if self.path.exists():
            for event in self.read_all():
                self._last_ts = event.ts
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)

    def append(self, event: ActionEvent) -> None:
        if not self.registry.is_registered(event.kind):
            raise ValidationError(f"unregistered event kind: {event.kind}")
        if event.ts < self._last_ts:
            raise ValidationError(
                f"event out of order: {event.ts} < {self._last_ts}"
            )
        line = json.dumps(event.to_json(), ensure_ascii=False)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            if self.durable:
                fh.flush()
                os.fsync(fh.fileno())
        self._last_ts = event.ts

    def read_all(self) -> list[ActionEvent]:
        if not self.path.exists():
            return []
        events = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    events.append(ActionEvent.from_json(json.loads(line)))
        return events

    def __iter__(self) -> Iterable[ActionEvent]:
        return iter(self.read_all())
