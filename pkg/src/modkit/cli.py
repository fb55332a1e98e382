"""Command-line interface: corpus pipeline, rule tools, prompt evaluation,
scoring/reporting, and the HTTP service."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .corpus import (
    CorpusConfig,
    balance,
    ingest,
    load_corpus,
    make_split,
    read_jsonl,
    save_corpus,
    save_split,
)
from .errors import ModkitError
from .evaluation import build_report, score, write_report
from .llm import HttpChatProvider, LLMProviderConfig
from .prompts import Prompt, PromptVerdictCache, evaluate, mock_provider
from .rules import classify, compile_phrase_cached, rules_from_json
from .types import Label


def _load_rules(path: Path):
    with open(path, encoding="utf-8") as fh:
        return rules_from_json(json.load(fh))


def _load_corpus_arg(path: Path):
    """Accept either a corpus directory or a bare comments.jsonl file."""
    path = Path(path)
    if path.is_dir():
        return load_corpus(path)
    from .corpus import Corpus
    from .types import Comment

    return Corpus(Comment.from_json(r) for r in read_jsonl(path))


@click.group()
def main():
    """Author personal text classifiers by labeling, rules, or prompts."""


# -- corpus ------------------------------------------------------------------


@main.group()
def corpus():
    """Dataset ingestion, balancing, and splits."""


@corpus.command("ingest")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
@click.option("--no-balance", is_flag=True, help="Skip toxicity balancing.")
def corpus_ingest(in_path: Path, config_path: Path, out_dir: Path, no_balance: bool):
    """Filter a raw JSONL comment dump and emit a balanced corpus."""
    cfg = (
        CorpusConfig.from_json(json.load(open(config_path, encoding="utf-8")))
        if config_path
        else CorpusConfig()
    )
    filtered, report = ingest(read_jsonl(in_path), cfg)
    result = filtered if no_balance else balance(filtered, cfg)
    save_corpus(result, out_dir, cfg, report)
    click.echo(
        json.dumps(
            {"accepted": report.accepted, "rejected": dict(report.rejected), "size": len(result)}
        )
    )


@corpus.command("split")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--session", "session_id", required=True)
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path))
def corpus_split(corpus_dir: Path, session_id: str, config_path: Path):
    """Derive a per-session train/test split."""
    cfg = (
        CorpusConfig.from_json(json.load(open(config_path, encoding="utf-8")))
        if config_path
        else CorpusConfig()
    )
    loaded = load_corpus(corpus_dir)
    split = make_split(loaded, cfg, session_id)
    path = save_split(split, corpus_dir)
    click.echo(
        json.dumps(
            {"session_id": session_id, "train": len(split.train_ids),
             "test": len(split.test_ids), "path": str(path)}
        )
    )


# -- rules -------------------------------------------------------------------


@main.group()
def rules():
    """Compile and apply phrase rules."""


@rules.command("compile")
@click.option("--rules", "rules_path", required=True, type=click.Path(exists=True, path_type=Path))
def rules_compile(rules_path: Path):
    """Compile every phrase and print the generated patterns."""
    out = []
    for rule in _load_rules(rules_path):
        conditions = list(rule.includes) + ([rule.exclude] if rule.exclude else [])
        for cond in conditions:
            for phrase in cond.phrases:
                compiled = compile_phrase_cached(phrase, cond.flags)
                out.append(
                    {
                        "rule": rule.name,
                        "kind": cond.kind.value,
                        "phrase": phrase,
                        "pattern": compiled.pattern,
                        "expansions": compiled.expansions,
                    }
                )
    click.echo(json.dumps({"compiled": out}, indent=2))


@rules.command("apply")
@click.option("--rules", "rules_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--explain", is_flag=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path))
def rules_apply(rules_path: Path, corpus_path: Path, explain: bool, out_path: Path):
    """Classify a corpus with a rule set; JSONL to stdout or --out."""
    loaded_rules = _load_rules(rules_path)
    corpus_data = _load_corpus_arg(corpus_path)
    sink = open(out_path, "w", encoding="utf-8") if out_path else sys.stdout
    try:
        for comment in corpus_data:
            prediction = classify(loaded_rules, comment.text)
            row = {"id": comment.id, "decision": prediction.decision.value}
            if explain:
                row["explanation"] = prediction.explanation
            sink.write(json.dumps(row, ensure_ascii=False) + "\n")
    finally:
        if out_path:
            sink.close()


# -- prompts -----------------------------------------------------------------


@main.group()
def prompts():
    """Evaluate LLM prompts over a corpus."""


@prompts.command("eval")
@click.option("--prompts", "prompts_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--mock", "mock_path", type=click.Path(exists=True, path_type=Path),
              help="Keyword-rule table for the offline mock provider.")
@click.option("--provider-config", type=click.Path(exists=True, path_type=Path),
              help="HTTP chat-provider config JSON.")
@click.option("--cache", "cache_path", type=click.Path(path_type=Path))
@click.option("--out", "out_path", type=click.Path(path_type=Path))
def prompts_eval(prompts_path, corpus_path, mock_path, provider_config, cache_path, out_path):
    """Evaluate prompts; per-comment decisions as JSONL."""
    with open(prompts_path, encoding="utf-8") as fh:
        prompt_list = [Prompt.from_json(r) for r in json.load(fh)["prompts"]]
    corpus_data = _load_corpus_arg(corpus_path)
    if mock_path:
        with open(mock_path, encoding="utf-8") as fh:
            provider = mock_provider(json.load(fh))
        batch_size, max_parallel = 10, 1
    elif provider_config:
        with open(provider_config, encoding="utf-8") as fh:
            cfg = LLMProviderConfig.from_json(json.load(fh))
        provider = HttpChatProvider(cfg)
        batch_size, max_parallel = cfg.batch_size, cfg.max_parallel
    else:
        raise click.UsageError("need either --mock or --provider-config")
    cache = PromptVerdictCache(cache_path) if cache_path else PromptVerdictCache()
    predictions = evaluate(
        prompt_list, list(corpus_data), cache, provider,
        batch_size=batch_size, max_parallel=max_parallel,
    )
    sink = open(out_path, "w", encoding="utf-8") if out_path else sys.stdout
    try:
        for comment in corpus_data:
            pred = predictions[comment.id]
            sink.write(
                json.dumps(
                    {"id": comment.id, "decision": pred.decision.value,
                     "explanation": pred.explanation},
                    ensure_ascii=False,
                )
                + "\n"
            )
    finally:
        if out_path:
            sink.close()


# -- eval --------------------------------------------------------------------


@main.group(name="eval")
def eval_group():
    """Score predictions and build cross-session reports."""


@eval_group.command("score")
@click.option("--predictions", "pred_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--ground-truth", "truth_path", required=True, type=click.Path(exists=True, path_type=Path))
def eval_score(pred_path: Path, truth_path: Path):
    """Confusion counts and metrics for a predictions JSONL."""
    predictions = {
        r["id"]: Label.parse(r["decision"]) for r in read_jsonl(pred_path)
    }
    with open(truth_path, encoding="utf-8") as fh:
        record = json.load(fh)
    labels = record["labels"] if "labels" in record else record
    truth = {cid: Label.parse(v) for cid, v in labels.items()}
    counts, metrics = score(predictions, truth)
    click.echo(json.dumps({"counts": counts.to_json(), "metrics": metrics.to_json()}))


@eval_group.command("report")
@click.option("--sessions", "sessions_dir", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
def eval_report(sessions_dir: Path, out_dir: Path):
    """Aggregate persisted session snapshots into report.json + series.csv."""
    from .evaluation import MetricsSnapshot

    sessions = []
    root = Path(sessions_dir)
    session_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    for sdir in session_dirs:
        for snap_file in sorted(sdir.glob("snapshots_*.jsonl")):
            strategy = snap_file.stem.removeprefix("snapshots_")
            snapshots = [
                MetricsSnapshot.from_json(json.loads(line))
                for line in snap_file.read_text(encoding="utf-8").splitlines()
                if line.strip()
            ]
            if snapshots:
                sessions.append(
                    {"session_id": sdir.name, "strategy": strategy, "snapshots": snapshots}
                )
    if not sessions:
        raise click.ClickException(f"no snapshot files under {sessions_dir}")
    report = build_report(sessions)
    report_path, series_path = write_report(report, out_dir)
    click.echo(json.dumps({"report": str(report_path), "series": str(series_path)}))


# -- serve -------------------------------------------------------------------


@main.command("serve")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
def serve(config_path: Path, host, port):
    """Run the authoring service."""
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig.from_file(config_path)
    app = create_app(config)
    uvicorn.run(app, host=host or config.host, port=port or config.port)


def entrypoint():  # pragma: no cover - thin wrapper
    try:
        main()
    except ModkitError as exc:
        click.echo(json.dumps({"error": exc.to_json()}), err=True)
        sys.exit(1)


if __name__ == "__main__":
    entrypoint()
