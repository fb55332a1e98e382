"""HTTP service: sessions, ground truth, the three authoring strategies,
evaluation, and persistence.

Every mutating call validates, appends exactly one gesture event (plus any
backend-wait bracket events) to the session's durable log, applies it to
the in-memory state, and only then responds. Prompt evaluations run as
background jobs polled via /jobs.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..corpus import CorpusConfig, load_manifest, make_split
from ..errors import ConflictError, ModkitError, NotFoundError, ValidationError
from ..evaluation import ActionEvent, ActionKindRegistry, build_report, score
from ..labeling import CachingEmbedder, make_embedding_provider
from ..prompts import Prompt, improve_description
from ..rules import Rule, suggest_similar_phrases
from ..types import Label
from .config import ServiceConfig
from .snapshots import compute_snapshots
from .state import Phase, STRATEGIES
from .store import SessionRuntime, SessionStore

_STATUS_BY_CODE = {
    "invalid": 400,
    "not_found": 404,
    "conflict": 409,
    "insufficient_classes": 409,
    "provider_error": 502,
    "batch_parse_error": 502,
}


class CreateSessionRequest(BaseModel):
    session_id: str = Field(min_length=1)
    corpus_id: str
    seed: Optional[int] = None
    strategy_order: Optional[list[str]] = None
    test_size: int = 100
    batch_k: Optional[int] = None


class GroundTruthRequest(BaseModel):
    labels: dict[str, str]


class ApplyRequest(BaseModel):
    target: str = "train_page"
    filter: str = "all"
    offset: int = 0
    limit: int = 50
    gesture: str = "apply_classifier"


class MarkRequest(BaseModel):
    comment_id: str
    label: str


class LoadMoreRequest(BaseModel):
    k: Optional[int] = None


class ConditionBody(BaseModel):
    phrases: list[str]
    flags: dict = Field(default_factory=dict)


class RuleBody(BaseModel):
    name: str
    includes: list[ConditionBody]
    exclude: Optional[ConditionBody] = None


class RefreshSpec(BaseModel):
    target: str = "train_page"
    filter: str = "all"
    offset: int = 0
    limit: int = 50


class ToggleVariantsRequest(BaseModel):
    enabled: bool
    refresh: Optional[RefreshSpec] = None


class SuggestRequest(BaseModel):
    phrases: list[str]


class PromptBody(BaseModel):
    description: str
    positive_examples: list[str] = Field(default_factory=list)
    negative_examples: list[str] = Field(default_factory=list)


class FewshotRequest(BaseModel):
    text: str
    positive: bool = True


class GestureRequest(BaseModel):
    kind: str
    strategy: Optional[str] = None
    payload: dict = Field(default_factory=dict)


class JobManager:
    def __init__(self, max_workers: int = 4):
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._jobs: dict[str, dict] = {}
        self._lock = threading.Lock()
        self._counter = itertools.count(1)

    def submit(self, fn: Callable[[], dict]) -> str:
        with self._lock:
            job_id = f"job-{next(self._counter)}"
            self._jobs[job_id] = {"job_id": job_id, "status": "pending"}

        def run():
            try:
                result = fn()
            except Exception as exc:  # pragma: no cover - defensive
                with self._lock:
                    self._jobs[job_id] = {
                        "job_id": job_id, "status": "failed", "error": str(exc),
                    }
                return
            with self._lock:
                self._jobs[job_id] = {
                    "job_id": job_id, "status": "done", "result": result,
                }

        self._executor.submit(run)
        return job_id

    def get(self, job_id: str) -> dict:
        with self._lock:
            if job_id not in self._jobs:
                raise NotFoundError(f"unknown job: {job_id}")
            return dict(self._jobs[job_id])


def create_app(
    config: ServiceConfig,
    clock: Callable[[], float] = time.time,
    registry: Optional[ActionKindRegistry] = None,
) -> FastAPI:
    registry = registry or ActionKindRegistry()
    embedding_provider = make_embedding_provider(config.embedding)
    store = SessionStore(
        config.data_dir,
        config.corpus_dir,
        embedder_factory=lambda: CachingEmbedder(embedding_provider),
        registry=registry,
    )
    llm_provider = config.make_llm_provider()
    jobs = JobManager()

    app = FastAPI(title="modkit service", version="0.1.0")
    app.state.store = store
    app.state.clock = clock
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ModkitError)
    async def modkit_error_handler(request: Request, exc: ModkitError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"error": exc.to_json()})

    # -- helpers ---------------------------------------------------------

    def now() -> float:
        return float(clock())

    def emit(
        runtime: SessionRuntime,
        session_id: str,
        kind: str,
        strategy: Optional[str],
        payload: dict,
    ) -> ActionEvent:
        event = ActionEvent(
            ts=now(), session_id=session_id, kind=kind,
            strategy=strategy, payload=payload,
        )
        runtime.log.append(event)
        runtime.state.apply(event)
        return event

    def get_runtime(session_id: str) -> SessionRuntime:
        return store.runtime(session_id)

    def require_phase(runtime: SessionRuntime, strategy: str, *allowed: Phase):
        _check_strategy(strategy)
        phase = runtime.state.phases[strategy]
        if phase not in allowed:
            raise ConflictError(
                f"strategy {strategy} is in phase {phase.value}; "
                f"needs {[p.value for p in allowed]}",
                details={"phase": phase.value},
            )

    def _check_strategy(strategy: str):
        if strategy not in STRATEGIES:
            raise ValidationError(f"unknown strategy: {strategy}")

    def session_summary(runtime: SessionRuntime) -> dict:
        state = runtime.state
        clocks = {}
        for s in STRATEGIES:
            active = state.clocks[s].active_seconds_at(now())
            clocks[s] = {
                "phase": state.phases[s].value,
                "active_seconds": active,
                "over_time_limit": active > config.time_limit_seconds,
            }
        return {
            "session_id": state.session_id,
            "corpus_id": state.corpus_id,
            "seed": state.seed,
            "strategy_order": state.strategy_order,
            "strategies": clocks,
            "ground_truth": {
                "labeled": len(state.ground_truth),
                "frozen": state.ground_truth_frozen,
                "test_size": len(state.split.test_ids) if state.split else 0,
            },
            "counts": {
                "labels": len(state.label.labels),
                "rules": len(state.rule.rules),
                "prompts": len(state.prompt.prompts),
            },
            "time_limit_seconds": config.time_limit_seconds,
        }

    def predictions_payload(
        runtime: SessionRuntime, strategy: str, ids: list[str], req: ApplyRequest,
        provider=None,
    ) -> dict:
        state = runtime.state
        preds = state.predict(
            strategy, ids,
            cache=runtime.cache, provider=provider,
            batch_size=config.llm_batch_size, max_parallel=config.llm_max_parallel,
        )
        rows = []
        for cid in ids:
            pred = preds[cid]
            if req.filter == "removed" and pred.decision is not Label.REMOVE:
                continue
            if req.filter == "approved" and pred.decision is not Label.KEEP:
                continue
            rows.append(
                {
                    "comment_id": cid,
                    "text": state.corpus.get(cid).text,
                    "decision": pred.decision.value,
                    "explanation": pred.explanation,
                }
            )
        return {"target": req.target, "filter": req.filter, "results": rows}

    def wait_bracket(runtime: SessionRuntime, session_id: str, strategy: Optional[str]):
        class _Bracket:
            def __enter__(self_inner):
                emit(runtime, session_id, "backend_wait_start", strategy, {})
                return self_inner

            def __exit__(self_inner, exc_type, exc, tb):
                emit(runtime, session_id, "backend_wait_end", strategy, {})
                return False

        return _Bracket()

    # -- corpora ----------------------------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/corpora")
    def corpora():
        return {"corpora": store.list_corpora()}

    @app.get("/corpora/{corpus_id}")
    def corpus_manifest(corpus_id: str):
        if corpus_id not in store.list_corpora():
            raise NotFoundError(f"unknown corpus: {corpus_id}")
        try:
            manifest = load_manifest(store.corpus_dir / corpus_id)
        except NotFoundError:
            manifest = {"size": len(store.corpus(corpus_id))}
        return {"corpus_id": corpus_id, "manifest": manifest}

    # -- sessions ----------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        corpus = store.corpus(body.corpus_id)
        seed = body.seed if body.seed is not None else config.default_seed
        if body.strategy_order is not None:
            order = [s.lower() for s in body.strategy_order]
            if sorted(order) != sorted(STRATEGIES):
                raise ValidationError(
                    f"strategy_order must be a permutation of {list(STRATEGIES)}"
                )
        else:
            digest = hashlib.sha256(f"{seed}:order:{body.session_id}".encode()).digest()
            rng = random.Random(int.from_bytes(digest[:8], "big"))
            order = list(rng.choice(sorted(itertools.permutations(STRATEGIES))))
        cfg = CorpusConfig(
            target_size=max(len(corpus), body.test_size + 1),
            test_size=body.test_size,
            seed=seed,
        )
        split = make_split(corpus, cfg, body.session_id)
        runtime = store.create_session(body.session_id, body.corpus_id)
        emit(
            runtime, body.session_id, "session_created", None,
            {
                "corpus_id": body.corpus_id,
                "seed": seed,
                "strategy_order": order,
                "batch_k": body.batch_k or config.batch_k,
                "train_ids": list(split.train_ids),
                "test_ids": list(split.test_ids),
            },
        )
        return session_summary(runtime)

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": store.session_ids()}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_summary(get_runtime(session_id))

    @app.get("/sessions/{session_id}/comments")
    def get_comments(
        session_id: str,
        split: str = "train",
        ids: Optional[str] = None,
        offset: int = 0,
        limit: int = 50,
    ):
        runtime = get_runtime(session_id)
        state = runtime.state
        if ids:
            wanted = ids.split(",")
        elif split == "train":
            wanted = list(state.split.train_ids)[offset : offset + limit]
        elif split == "test":
            wanted = list(state.split.test_ids)[offset : offset + limit]
        else:
            raise ValidationError("split must be train or test")
        return {
            "comments": [
                {"id": cid, "text": state.corpus.get(cid).text} for cid in wanted
            ],
            "total": len(state.split.train_ids if split == "train" else state.split.test_ids),
        }

    @app.get("/sessions/{session_id}/events")
    def get_events(session_id: str, user_only: bool = False):
        runtime = get_runtime(session_id)
        events = runtime.log.read_all()
        if user_only:
            events = [e for e in events if runtime.log.registry.is_user_action(e.kind)]
        return {"events": [e.to_json() for e in events]}

    # -- ground truth -------------------------------------------------------

    @app.post("/sessions/{session_id}/ground-truth")
    def submit_ground_truth(session_id: str, body: GroundTruthRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            state = runtime.state
            if state.ground_truth_frozen:
                raise ConflictError("ground truth is frozen", details={"code": "frozen"})
            test_ids = set(state.split.test_ids)
            outside = sorted(set(body.labels) - test_ids)
            if outside:
                raise ValidationError(
                    "labels outside the test split", details={"ids": outside}
                )
            labels = {cid: Label.parse(v).value for cid, v in body.labels.items()}
            emit(runtime, session_id, "ground_truth_label", None, {"labels": labels})
            return {
                "labeled": len(state.ground_truth),
                "remaining": len(test_ids) - len(state.ground_truth),
            }

    @app.post("/sessions/{session_id}/ground-truth/finalize")
    def finalize_ground_truth(session_id: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            state = runtime.state
            if state.ground_truth_frozen:
                raise ConflictError("ground truth already frozen")
            missing = sorted(set(state.split.test_ids) - set(state.ground_truth))
            if missing:
                raise ValidationError(
                    f"{len(missing)} test comments still unlabeled",
                    details={"missing_ids": missing},
                )
            emit(runtime, session_id, "ground_truth_finalized", None, {})
            return {"frozen": True, "labeled": len(state.ground_truth)}

    @app.get("/sessions/{session_id}/ground-truth")
    def get_ground_truth(session_id: str):
        runtime = get_runtime(session_id)
        state = runtime.state
        return {
            "labels": {k: v.value for k, v in sorted(state.ground_truth.items())},
            "frozen": state.ground_truth_frozen,
        }

    # -- strategy lifecycle ---------------------------------------------------

    @app.post("/sessions/{session_id}/strategies/{strategy}/open")
    def open_strategy(session_id: str, strategy: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, strategy, Phase.NOT_STARTED)
            emit(runtime, session_id, "strategy_opened", strategy, {})
            return session_summary(runtime)

    @app.post("/sessions/{session_id}/strategies/{strategy}/finish")
    def finish_strategy(session_id: str, strategy: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, strategy, Phase.AUTHORING)
            if strategy == "label":
                with wait_bracket(runtime, session_id, strategy):
                    emit(runtime, session_id, "strategy_finished", strategy, {})
            else:
                emit(runtime, session_id, "strategy_finished", strategy, {})
            return session_summary(runtime)

    @app.post("/sessions/{session_id}/strategies/{strategy}/close")
    def close_strategy(session_id: str, strategy: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, strategy, Phase.AUTHORING, Phase.REVIEW)
            emit(runtime, session_id, "strategy_closed", strategy, {})
            events = runtime.log.read_all()
            snapshots = compute_snapshots(
                events,
                runtime.state.corpus,
                runtime.state.embedder,
                runtime.cache,
                strategy,
                provider=llm_provider if strategy == "prompt" else None,
                batch_size=config.llm_batch_size,
            )
            runtime.directory.write_snapshots(strategy, snapshots)
            return {
                "strategy": strategy,
                "snapshots": len(snapshots),
                "final": snapshots[-1].metrics.to_json() if snapshots else None,
            }

    # -- classifier application ------------------------------------------------

    @app.post("/sessions/{session_id}/strategies/{strategy}/apply")
    def apply_classifier(session_id: str, strategy: str, body: ApplyRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            _check_strategy(strategy)
            state = runtime.state
            if body.target == "train_page":
                require_phase(
                    runtime, strategy, Phase.AUTHORING, Phase.REVIEW, Phase.CLOSED
                )
                ids = list(state.split.train_ids)[body.offset : body.offset + body.limit]
            elif body.target == "test":
                require_phase(runtime, strategy, Phase.REVIEW, Phase.CLOSED)
                ids = list(state.split.test_ids)
            else:
                raise ValidationError("target must be train_page or test")
            if body.filter not in ("all", "removed", "approved"):
                raise ValidationError("filter must be all, removed, or approved")
            if not runtime.log.registry.is_user_action(body.gesture):
                raise ValidationError(f"not a user gesture kind: {body.gesture}")
            emit(
                runtime, session_id, body.gesture, strategy,
                {"target": body.target, "filter": body.filter, "offset": body.offset},
            )
            if strategy == "prompt":
                emit(runtime, session_id, "backend_wait_start", strategy, {})

                def job():
                    try:
                        result = predictions_payload(
                            runtime, strategy, ids, body, provider=llm_provider
                        )
                    finally:
                        with runtime.lock:
                            emit(runtime, session_id, "backend_wait_end", strategy, {})
                    return result

                job_id = jobs.submit(job)
                return {"job_id": job_id, "status": "pending"}
            result = predictions_payload(runtime, strategy, ids, body)
            return {"job_id": None, "status": "done", "result": result}

    @app.get("/sessions/{session_id}/jobs/{job_id}")
    def get_job(session_id: str, job_id: str):
        return jobs.get(job_id)

    @app.get("/sessions/{session_id}/strategies/{strategy}/metrics")
    def strategy_metrics(session_id: str, strategy: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, strategy, Phase.REVIEW, Phase.CLOSED)
            state = runtime.state
            if not state.ground_truth:
                raise ConflictError("no ground truth labels to score against")
            ids = [cid for cid in state.split.test_ids if cid in state.ground_truth]
            if strategy == "prompt":
                with wait_bracket(runtime, session_id, strategy):
                    preds = state.predict(
                        strategy, ids, cache=runtime.cache, provider=llm_provider,
                        batch_size=config.llm_batch_size,
                        max_parallel=config.llm_max_parallel,
                    )
            else:
                preds = state.predict(strategy, ids, cache=runtime.cache)
            counts, metrics = score(preds, {cid: state.ground_truth[cid] for cid in ids})
            return {
                "strategy": strategy,
                "counts": counts.to_json(),
                "metrics": metrics.to_json(),
            }

    @app.get("/sessions/{session_id}/strategies/{strategy}/snapshots")
    def strategy_snapshots(session_id: str, strategy: str):
        runtime = get_runtime(session_id)
        _check_strategy(strategy)
        snapshots = runtime.directory.read_snapshots(strategy)
        if not snapshots and runtime.state.phases[strategy] is not Phase.NOT_STARTED:
            snapshots = compute_snapshots(
                runtime.log.read_all(),
                runtime.state.corpus,
                runtime.state.embedder,
                runtime.cache,
                strategy,
            )
        return {"snapshots": [s.to_json() for s in snapshots]}

    @app.get("/sessions/{session_id}/report")
    def session_report(session_id: str):
        runtime = get_runtime(session_id)
        sessions = []
        for strategy in STRATEGIES:
            snapshots = runtime.directory.read_snapshots(strategy)
            if snapshots:
                sessions.append(
                    {
                        "session_id": session_id,
                        "strategy": strategy,
                        "snapshots": snapshots,
                    }
                )
        if not sessions:
            raise NotFoundError("no persisted snapshots yet; close a strategy first")
        return build_report(sessions)

    # -- label strategy ----------------------------------------------------------

    @app.post("/sessions/{session_id}/label/mark")
    def label_mark(session_id: str, body: MarkRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "label", Phase.AUTHORING)
            state = runtime.state
            if body.comment_id not in state.split.train_ids:
                raise ValidationError(
                    f"comment {body.comment_id} is not in the train split"
                )
            label = Label.parse(body.label)
            emit(
                runtime, session_id, "label_example", "label",
                {"comment_id": body.comment_id, "label": label.value},
            )
            return {"labeled": len(state.label.labels)}

    @app.post("/sessions/{session_id}/label/load-more")
    def label_load_more(session_id: str, body: LoadMoreRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "label", Phase.AUTHORING)
            state = runtime.state
            k = body.k or state.batch_k
            with wait_bracket(runtime, session_id, "label"):
                emit(runtime, session_id, "load_more_examples", "label", {"k": k})
            return {
                "batch": [
                    {"id": cid, "text": state.corpus.get(cid).text}
                    for cid in state.label.current_batch
                ],
                "model_trained": state.label.model is not None,
                "labeled": len(state.label.labels),
            }

    @app.get("/sessions/{session_id}/label/state")
    def label_state(session_id: str):
        runtime = get_runtime(session_id)
        state = runtime.state
        return {
            "labeled": {k: v.value for k, v in sorted(state.label.labels.items())},
            "current_batch": [
                {"id": cid, "text": state.corpus.get(cid).text}
                for cid in state.label.current_batch
            ],
            "model_trained": state.label.model is not None,
        }

    # -- rule strategy --------------------------------------------------------------

    def _rule_record(body: RuleBody) -> dict:
        record = {
            "name": body.name,
            "includes": [
                {"kind": "include", "phrases": c.phrases, "flags": c.flags}
                for c in body.includes
            ],
        }
        if body.exclude is not None:
            record["exclude"] = {
                "kind": "exclude",
                "phrases": body.exclude.phrases,
                "flags": body.exclude.flags,
            }
        return record

    @app.get("/sessions/{session_id}/rules")
    def list_rules(session_id: str):
        runtime = get_runtime(session_id)
        return {
            "rules": [
                {"rule_id": rid, **rule.to_json()}
                for rid, rule in runtime.state.rule.rules.items()
            ]
        }

    @app.post("/sessions/{session_id}/rules", status_code=201)
    def create_rule(session_id: str, body: RuleBody):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "rule", Phase.AUTHORING)
            record = _rule_record(body)
            Rule.from_json(record)  # validates shape and limits
            rid = f"r{runtime.state.rule.next_id}"
            emit(
                runtime, session_id, "create_rule", "rule",
                {"rule_id": rid, "rule": record},
            )
            return {"rule_id": rid, **record}

    @app.put("/sessions/{session_id}/rules/{rule_id}")
    def edit_rule(session_id: str, rule_id: str, body: RuleBody):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "rule", Phase.AUTHORING)
            if rule_id not in runtime.state.rule.rules:
                raise NotFoundError(f"unknown rule: {rule_id}")
            record = _rule_record(body)
            Rule.from_json(record)
            emit(
                runtime, session_id, "edit_rule", "rule",
                {"rule_id": rule_id, "rule": record},
            )
            return {"rule_id": rule_id, **record}

    @app.delete("/sessions/{session_id}/rules/{rule_id}")
    def delete_rule(session_id: str, rule_id: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "rule", Phase.AUTHORING)
            if rule_id not in runtime.state.rule.rules:
                raise NotFoundError(f"unknown rule: {rule_id}")
            emit(runtime, session_id, "delete_rule", "rule", {"rule_id": rule_id})
            return {"deleted": rule_id}

    @app.post("/sessions/{session_id}/rules/{rule_id}/toggle-variants")
    def toggle_variants(session_id: str, rule_id: str, body: ToggleVariantsRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "rule", Phase.AUTHORING)
            if rule_id not in runtime.state.rule.rules:
                raise NotFoundError(f"unknown rule: {rule_id}")
            emit(
                runtime, session_id, "toggle_variants", "rule",
                {"rule_id": rule_id, "enabled": body.enabled},
            )
            response = {"rule_id": rule_id, **runtime.state.rule.rules[rule_id].to_json()}
            if body.refresh is not None:
                # the toggle gesture re-applies rules; serving the refreshed
                # pane from the same call keeps one gesture = one request
                spec = ApplyRequest(**body.refresh.model_dump())
                ids = list(runtime.state.split.train_ids)[
                    spec.offset : spec.offset + spec.limit
                ]
                response["predictions"] = predictions_payload(
                    runtime, "rule", ids, spec
                )
            return response

    @app.post("/sessions/{session_id}/rules/suggest-phrases")
    def suggest_phrases(session_id: str, body: SuggestRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "rule", Phase.AUTHORING)
            if not body.phrases:
                raise ValidationError("need at least one existing phrase")
            if llm_provider is None:
                suggestions = []
            else:
                with wait_bracket(runtime, session_id, "rule"):
                    suggestions = suggest_similar_phrases(body.phrases, llm_provider)
            emit(
                runtime, session_id, "ask_synonyms", "rule",
                {"phrases": body.phrases, "suggestions": suggestions},
            )
            return {"suggestions": suggestions}

    # -- prompt strategy ---------------------------------------------------------------

    @app.get("/sessions/{session_id}/prompts")
    def list_prompts(session_id: str):
        runtime = get_runtime(session_id)
        return {
            "prompts": [
                {"prompt_id": pid, **prompt.to_json()}
                for pid, prompt in runtime.state.prompt.prompts.items()
            ]
        }

    @app.post("/sessions/{session_id}/prompts", status_code=201)
    def create_prompt(session_id: str, body: PromptBody):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "prompt", Phase.AUTHORING)
            record = body.model_dump()
            Prompt.from_json({**record, "id": "validate"})
            pid = f"p{runtime.state.prompt.next_id}"
            emit(
                runtime, session_id, "create_prompt", "prompt",
                {"prompt_id": pid, "prompt": record},
            )
            return {"prompt_id": pid, **runtime.state.prompt.prompts[pid].to_json()}

    @app.put("/sessions/{session_id}/prompts/{prompt_id}")
    def edit_prompt(session_id: str, prompt_id: str, body: PromptBody):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "prompt", Phase.AUTHORING)
            if prompt_id not in runtime.state.prompt.prompts:
                raise NotFoundError(f"unknown prompt: {prompt_id}")
            record = body.model_dump()
            Prompt.from_json({**record, "id": prompt_id})
            emit(
                runtime, session_id, "edit_prompt", "prompt",
                {"prompt_id": prompt_id, "prompt": record},
            )
            return {"prompt_id": prompt_id, **runtime.state.prompt.prompts[prompt_id].to_json()}

    @app.delete("/sessions/{session_id}/prompts/{prompt_id}")
    def delete_prompt(session_id: str, prompt_id: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "prompt", Phase.AUTHORING)
            if prompt_id not in runtime.state.prompt.prompts:
                raise NotFoundError(f"unknown prompt: {prompt_id}")
            emit(runtime, session_id, "delete_prompt", "prompt", {"prompt_id": prompt_id})
            return {"deleted": prompt_id}

    @app.post("/sessions/{session_id}/prompts/{prompt_id}/examples")
    def add_fewshot(session_id: str, prompt_id: str, body: FewshotRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "prompt", Phase.AUTHORING)
            if prompt_id not in runtime.state.prompt.prompts:
                raise NotFoundError(f"unknown prompt: {prompt_id}")
            emit(
                runtime, session_id, "add_fewshot_example", "prompt",
                {"prompt_id": prompt_id, "text": body.text, "positive": body.positive},
            )
            return {"prompt_id": prompt_id, **runtime.state.prompt.prompts[prompt_id].to_json()}

    @app.post("/sessions/{session_id}/prompts/{prompt_id}/improve")
    def improve_prompt(session_id: str, prompt_id: str):
        runtime = get_runtime(session_id)
        with runtime.lock:
            require_phase(runtime, "prompt", Phase.AUTHORING)
            prompt = runtime.state.prompt.prompts.get(prompt_id)
            if prompt is None:
                raise NotFoundError(f"unknown prompt: {prompt_id}")
            if llm_provider is None:
                suggestion = prompt.description
            else:
                with wait_bracket(runtime, session_id, "prompt"):
                    suggestion = improve_description(prompt.description, llm_provider)
            emit(
                runtime, session_id, "improve_prompt", "prompt",
                {"prompt_id": prompt_id, "suggestion": suggestion},
            )
            return {"prompt_id": prompt_id, "suggestion": suggestion}

    # -- view gestures ------------------------------------------------------------------

    @app.post("/sessions/{session_id}/gestures")
    def record_gesture(session_id: str, body: GestureRequest):
        runtime = get_runtime(session_id)
        with runtime.lock:
            if not runtime.log.registry.is_registered(body.kind):
                raise ValidationError(f"unregistered event kind: {body.kind}")
            if not runtime.log.registry.is_user_action(body.kind):
                raise ValidationError(f"not a user gesture kind: {body.kind}")
            if body.strategy is not None:
                _check_strategy(body.strategy)
            emit(runtime, session_id, body.kind, body.strategy, body.payload)
            return {"recorded": body.kind}

    return app
