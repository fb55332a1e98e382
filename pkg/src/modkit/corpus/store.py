"""Corpus persistence: JSON-Lines comments plus a JSON manifest."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from ..errors import NotFoundError
from ..types import Comment
from .core import Corpus, CorpusConfig, IngestReport, SessionSplit

COMMENTS_FILE = "comments.jsonl"
MANIFEST_FILE = "manifest.json"
SPLITS_DIR = "splits"


def read_jsonl(path: Path) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def write_jsonl(path: Path, records) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def save_corpus(
    corpus: Corpus,
    out_dir: Path,
    cfg: CorpusConfig,
    report: Optional[IngestReport] = None,
) -> None:
    out_dir = Path(out_dir)
    write_jsonl(out_dir / COMMENTS_FILE, (c.to_json() for c in corpus))
    manifest = {
        "size": len(corpus),
        "seed": cfg.seed,
        "config": cfg.to_json(),
    }
    if report is not None:
        manifest["ingestion"] = report.to_json()
    with open(out_dir / MANIFEST_FILE, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def load_corpus(corpus_dir: Path) -> Corpus:
    path = Path(corpus_dir) / COMMENTS_FILE
    if not path.exists():
        raise NotFoundError(f"no corpus at {corpus_dir}")
    return Corpus(Comment.from_json(r) for r in read_jsonl(path))


def load_manifest(corpus_dir: Path) -> dict:
    path = Path(corpus_dir) / MANIFEST_FILE
    if not path.exists():
        raise NotFoundError(f"no manifest at {corpus_dir}")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def save_split(split: SessionSplit, corpus_dir: Path) -> Path:
    path = Path(corpus_dir) / SPLITS_DIR / f"{split.session_id}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(split.to_json(), fh)
        fh.write("\n")
    return path


def load_split(corpus_dir: Path, session_id: str) -> SessionSplit:
    path = Path(corpus_dir) / SPLITS_DIR / f"{session_id}.json"
    if not path.exists():
        raise NotFoundError(f"no split for session {session_id}")
    with open(path, encoding="utf-8") as fh:
        return SessionSplit.from_json(json.load(fh))
