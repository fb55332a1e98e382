"""Shared domain types used across all classifier strategies."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class Label(str, Enum):
    """Binary moderation decision."""

    KEEP = "Keep"
    REMOVE = "Remove"

    @classmethod
    def parse(cls, value: str) -> "Label":
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"not a valid label: {value!r}")


class Strategy(str, Enum):
    """The three classifier-authoring strategies."""

    LABEL = "label"
    RULE = "rule"
    PROMPT = "prompt"

    @classmethod
    def parse(cls, value: str) -> "Strategy":
        for member in cls:
            if member.value == str(value).strip().lower():
                return member
        raise ValueError(f"not a valid strategy: {value!r}")


@dataclass(frozen=True)
class Comment:
    """One corpus item.

    ``toxicity_score`` is an externally precomputed score in [0, 1]; it is
    optional because hand-built corpora may not carry one.
    """

    id: str
    text: str
    video_id: str = ""
    is_reply: bool = False
    toxicity_score: Optional[float] = None

    def to_json(self) -> dict:
        record: dict[str, Any] = {
            "id": self.id,
            "text": self.text,
            "video_id": self.video_id,
            "is_reply": self.is_reply,
        }
        if self.toxicity_score is not None:
            record["toxicity_score"] = self.toxicity_score
        return record

    @classmethod
    def from_json(cls, record: dict) -> "Comment":
        return cls(
            id=record["id"],
            text=record["text"],
            video_id=record.get("video_id", ""),
            is_reply=bool(record.get("is_reply", False)),
            toxicity_score=record.get("toxicity_score"),
        )


@dataclass
class Prediction:
    """Keep/Remove decision plus a strategy-specific explanation payload."""

    decision: Label
    explanation: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"decision": self.decision.value, "explanation": self.explanation}
