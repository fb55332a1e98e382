"""Prompt data model and the per-(prompt version, comment) verdict cache."""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Optional

from ..errors import ValidationError
from ..types import Label


@dataclass
class Prompt:
    """A natural-language removal rubric with optional few-shot examples.

    ``version`` is a content hash, recomputed from the current fields on
    every access, so any edit automatically invalidates cached verdicts.
    """

    id: str
    description: str
    positive_examples: list[str] = field(default_factory=list)
    negative_examples: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.description or not self.description.strip():
            raise ValidationError("prompt description must be non-empty")

    @property
    def version(self) -> str:
        blob = json.dumps(
            {
                "description": self.description,
                "positive": self.positive_examples,
                "negative": self.negative_examples,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "positive_examples": list(self.positive_examples),
            "negative_examples": list(self.negative_examples),
            "version": self.version,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "Prompt":
        return cls(
            id=record["id"],
            description=record["description"],
            positive_examples=list(record.get("positive_examples", [])),
            negative_examples=list(record.get("negative_examples", [])),
        )


class PromptVerdictCache:
    """Verdict store keyed by (prompt_version, comment_id).

    Writes are serialized behind a lock and optionally appended to a
    JSON-Lines file so that sessions can be replayed without re-querying
    the provider.
    """

    def __init__(self, path: Optional[Path] = None):
        self._entries: dict[tuple[str, str], Label] = {}
        self._lock = threading.Lock()
        self._path = Path(path) if path else None
        if self._path and self._path.exists():
            self._load()

    def _load(self) -> None:
        with open(self._path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                key = (record["prompt_version"], record["comment_id"])
                self._entries[key] = Label.parse(record["verdict"])

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._entries

    def get(self, prompt_version: str, comment_id: str) -> Optional[Label]:
        return self._entries.get((prompt_version, comment_id))

    def put(self, prompt_version: str, comment_id: str, verdict: Label) -> None:
        with self._lock:
            key = (prompt_version, comment_id)
            if self._entries.get(key) == verdict:
                return
            self._entries[key] = verdict
            if self._path is not None:
                self._path.parent.mkdir(parents=True, exist_ok=True)
                with open(self._path, "a", encoding="utf-8") as fh:
                    fh.write(
                        json.dumps(
                            {
                                "prompt_version": prompt_version,
                                "comment_id": comment_id,
                                "verdict": verdict.value,
                            }
                        )
                        + "\n"
                    )

    def items(self) -> Iterator[tuple[tuple[str, str], Label]]:
        return iter(self._entries.items())
