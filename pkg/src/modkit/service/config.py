"""Service configuration: storage paths, providers, seeds, and limits."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from ..llm import HttpChatProvider, LLMProvider, LLMProviderConfig
from ..prompts.mock import KeywordMockProvider


@dataclass
class ServiceConfig:
    data_dir: Path
    corpus_dir: Path
    embedding: dict = field(default_factory=lambda: {"provider": "hashed-bow"})
    llm: dict = field(default_factory=dict)
    default_seed: int = 0
    batch_k: int = 10
    time_limit_seconds: int = 900
    llm_batch_size: int = 10
    llm_max_parallel: int = 1
    host: str = "127.0.0.1"
    port: int = 8008
    static_dir: Optional[Path] = None

    @classmethod
    def from_json(cls, record: Mapping, base_dir: Path = Path(".")) -> "ServiceConfig":
        def _path(key, default):
            raw = record.get(key, default)
            p = Path(raw)
            return p if p.is_absolute() else base_dir / p

        return cls(
            data_dir=_path("data_dir", "data"),
            corpus_dir=_path("corpus_dir", "corpora"),
            embedding=dict(record.get("embedding", {"provider": "hashed-bow"})),
            llm=dict(record.get("llm", {})),
            default_seed=int(record.get("default_seed", 0)),
            batch_k=int(record.get("batch_k", 10)),
            time_limit_seconds=int(record.get("time_limit_seconds", 900)),
            llm_batch_size=int(record.get("llm_batch_size", 10)),
            llm_max_parallel=int(record.get("llm_max_parallel", 1)),
            host=record.get("host", "127.0.0.1"),
            port=int(record.get("port", 8008)),
            static_dir=_path("static_dir", record["static_dir"]) if record.get("static_dir") else None,
        )

    @classmethod
    def from_file(cls, path: Path) -> "ServiceConfig":
        path = Path(path)
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), base_dir=path.parent)

    def make_llm_provider(self) -> Optional[LLMProvider]:
        if "mock" in self.llm:
            spec = self.llm["mock"]
            if "rules" in spec:
                return KeywordMockProvider(
                    spec["rules"],
                    suggestions=spec.get("suggestions"),
                    improvements=spec.get("improvements"),
                )
            return KeywordMockProvider(spec)
        if self.llm.get("endpoint"):
            return HttpChatProvider(LLMProviderConfig.from_json(self.llm))
        return None
