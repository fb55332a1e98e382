"""Directory-backed session store: append-only event logs, verdict caches,
and persisted snapshot series. No external database."""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Optional

from ..corpus import Corpus, load_corpus
from ..errors import ConflictError, NotFoundError
from ..evaluation import ActionKindRegistry, EventLog, MetricsSnapshot
from ..labeling import CachingEmbedder
from ..prompts import PromptVerdictCache
from .state import SessionState


class SessionDirectory:
    """Paths and persistence for one session."""

    def __init__(self, root: Path):
        self.root = Path(root)

    @property
    def events_path(self) -> Path:
        return self.root / "events.jsonl"

    @property
    def cache_path(self) -> Path:
        return self.root / "cache.jsonl"

    def snapshots_path(self, strategy: str) -> Path:
        return self.root / f"snapshots_{strategy}.jsonl"

    def write_snapshots(self, strategy: str, snapshots: list[MetricsSnapshot]) -> None:
        path = self.snapshots_path(strategy)
        with open(path, "w", encoding="utf-8") as fh:
            for snap in snapshots:
                fh.write(json.dumps(snap.to_json(), sort_keys=True) + "\n")

    def read_snapshots(self, strategy: str) -> list[MetricsSnapshot]:
        path = self.snapshots_path(strategy)
        if not path.exists():
            return []
        out = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(MetricsSnapshot.from_json(json.loads(line)))
        return out


class SessionRuntime:
    """Live handles for one session: log, cache, state, and a mutation lock."""

    def __init__(
        self,
        directory: SessionDirectory,
        corpus: Corpus,
        embedder: CachingEmbedder,
        registry: Optional[ActionKindRegistry] = None,
        *,
        durable: bool = True,
    ):
        self.directory = directory
        self.log = EventLog(directory.events_path, registry, durable=durable)
        self.cache = PromptVerdictCache(directory.cache_path)
        self.state = SessionState(corpus, embedder)
        self.lock = threading.RLock()
        for event in self.log.read_all():
            self.state.apply(event)


class SessionStore:
    """All sessions under one data directory, plus the corpus registry."""

    def __init__(
        self,
        data_dir: Path,
        corpus_dir: Path,
        embedder_factory,
        registry: Optional[ActionKindRegistry] = None,
        *,
        durable: bool = True,
    ):
        self.data_dir = Path(data_dir)
        self.corpus_dir = Path(corpus_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self.registry = registry
        self.durable = durable
        self._embedder_factory = embedder_factory
        self._corpora: dict[str, Corpus] = {}
        self._runtimes: dict[str, SessionRuntime] = {}
        self._lock = threading.Lock()

    # corpora ------------------------------------------------------------

    def list_corpora(self) -> list[str]:
        if not self.corpus_dir.exists():
            return []
        return sorted(
            p.name for p in self.corpus_dir.iterdir()
            if (p / "comments.jsonl").exists()
        )

    def corpus(self, corpus_id: str) -> Corpus:
        if corpus_id not in self._corpora:
            path = self.corpus_dir / corpus_id
            if not (path / "comments.jsonl").exists():
                raise NotFoundError(f"unknown corpus: {corpus_id}")
            self._corpora[corpus_id] = load_corpus(path)
        return self._corpora[corpus_id]

    # sessions -----------------------------------------------------------

    def session_ids(self) -> list[str]:
        return sorted(p.name for p in self.sessions_dir.iterdir() if p.is_dir())

    def session_dir(self, session_id: str) -> SessionDirectory:
        return SessionDirectory(self.sessions_dir / session_id)

    def create_session(self, session_id: str, corpus_id: str) -> SessionRuntime:
        with self._lock:
            path = self.sessions_dir / session_id
            if path.exists():
                raise ConflictError(f"session already exists: {session_id}")
            path.mkdir(parents=True)
            runtime = SessionRuntime(
                SessionDirectory(path),
                self.corpus(corpus_id),
                self._embedder_factory(),
                self.registry,
                durable=self.durable,
            )
            self._runtimes[session_id] = runtime
            return runtime

    def runtime(self, session_id: str) -> SessionRuntime:
        with self._lock:
            if session_id in self._runtimes:
                return self._runtimes[session_id]
            path = self.sessions_dir / session_id
            if not path.exists():
                raise NotFoundError(f"unknown session: {session_id}")
            directory = SessionDirectory(path)
            events = EventLog(directory.events_path, self.registry, durable=False).read_all()
            if not events:
                raise NotFoundError(f"session has no events: {session_id}")
            corpus_id = events[0].payload["corpus_id"]
            runtime = SessionRuntime(
                directory,
                self.corpus(corpus_id),
                self._embedder_factory(),
                self.registry,
                durable=self.durable,
            )
            self._runtimes[session_id] = runtime
            return runtime
