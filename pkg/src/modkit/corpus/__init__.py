from .core import (
    Corpus,
    CorpusConfig,
    GroundTruth,
    IngestReport,
    SessionSplit,
    balance,
    ingest,
    make_split,
    mark_toxic,
)
from .store import (
    load_corpus,
    load_manifest,
    load_split,
    read_jsonl,
    save_corpus,
    save_split,
    write_jsonl,
)

__all__ = [
    "Corpus",
    "CorpusConfig",
    "GroundTruth",
    "IngestReport",
    "SessionSplit",
    "balance",
    "ingest",
    "make_split",
    "mark_toxic",
    "load_corpus",
    "load_manifest",
    "load_split",
    "read_jsonl",
    "save_corpus",
    "save_split",
    "write_jsonl",
]
