"""Dataset pipeline: ingestion filtering, toxicity partitioning, class
balancing, and per-session train/test splits.

All sampling is a pure function of (seed, session_id, sorted input ids), so
every artifact is reproducible across runs and platforms.
"""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from ..errors import ValidationError
from ..types import Comment, Label


@dataclass(frozen=True)
class CorpusConfig:
    min_chars: int = 15
    max_chars: int = 600
    toxic_threshold: float = 0.7
    target_size: int = 800
    test_size: int = 100
    seed: int = 0

    def __post_init__(self):
        if not (0 < self.min_chars < self.max_chars):
            raise ValidationError("require 0 < min_chars < max_chars")
        if not (0 < self.test_size < self.target_size):
            raise ValidationError("require 0 < test_size < target_size")
        if not (0.0 < self.toxic_threshold < 1.0):
            raise ValidationError("toxic_threshold must be in (0, 1)")

    def to_json(self) -> dict:
        return {
            "min_chars": self.min_chars,
            "max_chars": self.max_chars,
            "toxic_threshold": self.toxic_threshold,
            "target_size": self.target_size,
            "test_size": self.test_size,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "CorpusConfig":
        return cls(**{k: record[k] for k in record.keys() & {
            "min_chars", "max_chars", "toxic_threshold",
            "target_size", "test_size", "seed",
        }})


class Corpus:
    """An ordered, id-unique collection of comments."""

    def __init__(self, comments: Iterable[Comment]):
        self._comments: list[Comment] = []
        self._by_id: dict[str, Comment] = {}
        for c in comments:
            if c.id in self._by_id:
                raise ValidationError(f"duplicate comment id: {c.id}")
            self._comments.append(c)
            self._by_id[c.id] = c

    def __len__(self) -> int:
        return len(self._comments)

    def __iter__(self) -> Iterator[Comment]:
        return iter(self._comments)

    def __contains__(self, comment_id: str) -> bool:
        return comment_id in self._by_id

    def get(self, comment_id: str) -> Comment:
        try:
            return self._by_id[comment_id]
        except KeyError:
            raise ValidationError(f"unknown comment id: {comment_id}") from None

    def ids(self) -> list[str]:
        return [c.id for c in self._comments]

    def subset(self, ids: Iterable[str]) -> "Corpus":
        wanted = set(ids)
        return Corpus(c for c in self._comments if c.id in wanted)


@dataclass
class IngestReport:
    accepted: int = 0
    rejected: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {"accepted": self.accepted, "rejected": dict(self.rejected)}


@dataclass(frozen=True)
class SessionSplit:
    session_id: str
    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    seed: int

    def to_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "train_ids": list(self.train_ids),
            "test_ids": list(self.test_ids),
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "SessionSplit":
        return cls(
            session_id=record["session_id"],
            train_ids=tuple(record["train_ids"]),
            test_ids=tuple(record["test_ids"]),
            seed=record["seed"],
        )


@dataclass
class GroundTruth:
    session_id: str
    labels: dict[str, Label] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "labels": {k: v.value for k, v in self.labels.items()},
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "GroundTruth":
        return cls(
            session_id=record["session_id"],
            labels={k: Label.parse(v) for k, v in record["labels"].items()},
        )


def _derived_rng(*parts) -> random.Random:
    """Seeded RNG independent of Python's per-process hash randomization."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def ingest(records: Iterable[Mapping], cfg: CorpusConfig) -> tuple[Corpus, IngestReport]:
    """Filter a raw comment-record stream into a corpus.

    Rejections never abort the stream; each one is counted by reason in the
    report. Accepted text is stored byte-identically (no trimming).
    """
    report = IngestReport()
    accepted: list[Comment] = []
    seen: set[str] = set()
    for record in records:
        try:
            cid = record["id"]
            text = record["text"]
            is_reply = record["is_reply"]
        except (KeyError, TypeError):
            report.rejected["malformed"] += 1
            continue
        if not isinstance(cid, str) or not cid or not isinstance(text, str):
            report.rejected["malformed"] += 1
            continue
        if cid in seen:
            report.rejected["duplicate_id"] += 1
            continue
        seen.add(cid)
        if is_reply:
            report.rejected["reply"] += 1
            continue
        if len(text) < cfg.min_chars:
            report.rejected["too_short"] += 1
            continue
        if len(text) > cfg.max_chars:
            report.rejected["too_long"] += 1
            continue
        accepted.append(
            Comment(
                id=cid,
                text=text,
                video_id=record.get("video_id", ""),
                is_reply=bool(is_reply),
                toxicity_score=record.get("toxicity_score"),
            )
        )
        report.accepted += 1
    return Corpus(accepted), report


def mark_toxic(corpus: Corpus, threshold: float) -> dict[str, bool]:
    """Partition by external toxicity score; strictly greater than threshold."""
    missing = [c.id for c in corpus if c.toxicity_score is None]
    if missing:
        raise ValidationError(
            f"{len(missing)} comments have no toxicity_score",
            details={"missing_ids": missing},
        )
    return {c.id: c.toxicity_score > threshold for c in corpus}


def balance(corpus: Corpus, cfg: CorpusConfig) -> Corpus:
    """Sample a class-balanced corpus of exactly cfg.target_size comments.

    Takes floor(target/2) toxic and ceil(target/2) non-toxic comments,
    sampled without replacement via a seeded shuffle of lexicographically
    sorted ids.
    """
    marks = mark_toxic(corpus, cfg.toxic_threshold)
    toxic_ids = sorted(cid for cid, toxic in marks.items() if toxic)
    clean_ids = sorted(cid for cid, toxic in marks.items() if not toxic)

    quota_toxic = cfg.target_size // 2
    quota_clean = cfg.target_size - quota_toxic
    shortfalls = {}
    if len(toxic_ids) < quota_toxic:
        shortfalls["toxic"] = quota_toxic - len(toxic_ids)
    if len(clean_ids) < quota_clean:
        shortfalls["non_toxic"] = quota_clean - len(clean_ids)
    if shortfalls:
        raise ValidationError(
            "not enough comments to balance corpus", details={"shortfall": shortfalls}
        )

    selected: set[str] = set()
    for name, ids, quota in (
        ("toxic", toxic_ids, quota_toxic),
        ("non_toxic", clean_ids, quota_clean),
    ):
        rng = _derived_rng(cfg.seed, "balance", name)
        shuffled = ids[:]
        rng.shuffle(shuffled)
        selected.update(shuffled[:quota])

    return Corpus(c for c in corpus if c.id in selected)


def make_split(corpus: Corpus, cfg: CorpusConfig, session_id: str) -> SessionSplit:
    """Uniform random disjoint train/test split, seeded by (seed, session_id)."""
    if len(corpus) < cfg.test_size + 1:
        raise ValidationError(
            f"corpus of {len(corpus)} too small for test_size={cfg.test_size}"
        )
    rng = _derived_rng(cfg.seed, "split", session_id)
    ids = sorted(corpus.ids())
    rng.shuffle(ids)
    return SessionSplit(
        session_id=session_id,
        train_ids=tuple(ids[cfg.test_size:]),
        test_ids=tuple(ids[: cfg.test_size]),
        seed=cfg.seed,
    )
