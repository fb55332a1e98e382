"""Event-sourced session state.

Every mutation enters the system as a logged ActionEvent; ``apply`` is the
single transition function, so replaying a session's log against a fresh
state reproduces classifier state exactly. Provider calls never happen
inside ``apply`` — prompt verdicts flow through the persisted cache.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from ..corpus import Corpus, SessionSplit
from ..errors import ConflictError, ValidationError
from ..evaluation import ActionEvent, WaitInterval, active_seconds
from ..labeling import (
    CachingEmbedder,
    LabeledExample,
    NBModel,
    bootstrap_batch,
    predict_proba,
    train,
    uncertainty_sample,
)
from ..prompts import Prompt, PromptVerdictCache, evaluate
from ..rules import Rule, VariantFlags, classify, rules_to_json
from ..types import Label, Prediction

STRATEGIES = ("label", "rule", "prompt")


class Phase(str, Enum):
    NOT_STARTED = "not_started"
    AUTHORING = "authoring"
    REVIEW = "review"
    CLOSED = "closed"


@dataclass
class StrategyClock:
    opened_ts: Optional[float] = None
    closed_ts: Optional[float] = None
    waits: list[WaitInterval] = field(default_factory=list)
    _open_wait_ts: Optional[float] = None
    _wait_depth: int = 0

    def start_wait(self, ts: float) -> None:
        if self._wait_depth == 0:
            self._open_wait_ts = ts
        self._wait_depth += 1

    def end_wait(self, ts: float) -> None:
        if self._wait_depth == 0:
            raise ValidationError("backend_wait_end without matching start")
        self._wait_depth -= 1
        if self._wait_depth == 0:
            self.waits.append(WaitInterval(self._open_wait_ts, ts))
            self._open_wait_ts = None

    def active_seconds_at(self, now: float) -> float:
        if self.opened_ts is None:
            return 0.0
        end = self.closed_ts if self.closed_ts is not None else now
        end = max(end, self.opened_ts)
        waits = list(self.waits)
        if self._open_wait_ts is not None:
            waits.append(WaitInterval(self._open_wait_ts, max(self._open_wait_ts, end)))
        return active_seconds(self.opened_ts, end, waits)


@dataclass
class LabelState:
    labels: dict[str, Label] = field(default_factory=dict)
    model: Optional[NBModel] = None
    current_batch: tuple[str, ...] = ()
    rounds: int = 0

    def classifier_state(self) -> dict:
        return {
            "labels": {k: v.value for k, v in sorted(self.labels.items())},
            "model": self.model.to_json() if self.model else None,
        }


@dataclass
class RuleState:
    rules: dict[str, Rule] = field(default_factory=dict)  # insertion order = creation order
    next_id: int = 1

    def ordered(self) -> list[Rule]:
        return list(self.rules.values())

    def classifier_state(self) -> dict:
        return {
            "rule_ids": list(self.rules.keys()),
            **rules_to_json(self.ordered()),
        }


@dataclass
class PromptState:
    prompts: dict[str, Prompt] = field(default_factory=dict)
    next_id: int = 1

    def ordered(self) -> list[Prompt]:
        return list(self.prompts.values())

    def classifier_state(self) -> dict:
        return {"prompts": [p.to_json() for p in self.ordered()]}


class SessionState:
    """Materialized view of one session's event log."""

    def __init__(self, corpus: Corpus, embedder: CachingEmbedder):
        self.corpus = corpus
        self.embedder = embedder
        self.session_id: str = ""
        self.corpus_id: str = ""
        self.seed: int = 0
        self.strategy_order: list[str] = []
        self.split: Optional[SessionSplit] = None
        self.ground_truth: dict[str, Label] = {}
        self.ground_truth_frozen = False
        self.label = LabelState()
        self.rule = RuleState()
        self.prompt = PromptState()
        self.phases: dict[str, Phase] = {s: Phase.NOT_STARTED for s in STRATEGIES}
        self.clocks: dict[str, StrategyClock] = {s: StrategyClock() for s in STRATEGIES}
        self.batch_k = 10

    # -- embeddings ----------------------------------------------------

    def _embeddings_for(self, comment_ids: Sequence[str]) -> dict:
        texts = [self.corpus.get(cid).text for cid in comment_ids]
        vectors = self.embedder.embed_texts(texts)
        return dict(zip(comment_ids, vectors))

    # -- event application ---------------------------------------------

    def apply(self, event: ActionEvent) -> None:
        handler = getattr(self, f"_apply_{event.kind}", None)
        if handler is not None:
            handler(event)

    def _apply_session_created(self, event: ActionEvent) -> None:
        payload = event.payload
        self.session_id = event.session_id
        self.corpus_id = payload["corpus_id"]
        self.seed = payload["seed"]
        self.strategy_order = list(payload["strategy_order"])
        self.batch_k = payload.get("batch_k", 10)
        self.split = SessionSplit(
            session_id=event.session_id,
            train_ids=tuple(payload["train_ids"]),
            test_ids=tuple(payload["test_ids"]),
            seed=payload["seed"],
        )

    def _apply_ground_truth_label(self, event: ActionEvent) -> None:
        for cid, value in event.payload["labels"].items():
            self.ground_truth[cid] = Label.parse(value)

    def _apply_ground_truth_finalized(self, event: ActionEvent) -> None:
        self.ground_truth_frozen = True

    def _apply_strategy_opened(self, event: ActionEvent) -> None:
        self.phases[event.strategy] = Phase.AUTHORING
        self.clocks[event.strategy].opened_ts = event.ts

    def _apply_strategy_finished(self, event: ActionEvent) -> None:
        self.phases[event.strategy] = Phase.REVIEW
        # final retrain so review reflects all labels
        if event.strategy == "label":
            self._retrain()

    def _apply_strategy_closed(self, event: ActionEvent) -> None:
        self.phases[event.strategy] = Phase.CLOSED
        self.clocks[event.strategy].closed_ts = event.ts

    def _apply_backend_wait_start(self, event: ActionEvent) -> None:
        if event.strategy:
            self.clocks[event.strategy].start_wait(event.ts)

    def _apply_backend_wait_end(self, event: ActionEvent) -> None:
        if event.strategy:
            self.clocks[event.strategy].end_wait(event.ts)

    # label strategy ----------------------------------------------------

    def _apply_label_example(self, event: ActionEvent) -> None:
        cid = event.payload["comment_id"]
        self.label.labels[cid] = Label.parse(event.payload["label"])

    def _retrain(self) -> None:
        examples = [
            LabeledExample(cid, label) for cid, label in self.label.labels.items()
        ]
        if not examples:
            return
        kinds = {ex.label for ex in examples}
        if len(kinds) < 2:
            return
        embeddings = self._embeddings_for([ex.comment_id for ex in examples])
        self.label.model = train(examples, embeddings)

    def _apply_load_more_examples(self, event: ActionEvent) -> None:
        k = event.payload.get("k", self.batch_k)
        self._retrain()
        pool = [cid for cid in self.split.train_ids if cid not in self.label.labels]
        if not pool:
            self.label.current_batch = ()
            return
        if self.label.model is not None:
            embeddings = self._embeddings_for(pool)
            batch = uncertainty_sample(self.label.model, pool, embeddings, k)
        else:
            batch = bootstrap_batch(pool, k, seed=self.seed * 65536 + self.label.rounds)
        self.label.rounds += 1
        self.label.current_batch = batch.comment_ids

    # rule strategy -------------------------------------------------------

    def _apply_create_rule(self, event: ActionEvent) -> None:
        rid = event.payload["rule_id"]
        self.rule.rules[rid] = Rule.from_json(event.payload["rule"])
        self.rule.next_id += 1

    def _apply_edit_rule(self, event: ActionEvent) -> None:
        rid = event.payload["rule_id"]
        if rid in self.rule.rules:
            self.rule.rules[rid] = Rule.from_json(event.payload["rule"])

    def _apply_delete_rule(self, event: ActionEvent) -> None:
        self.rule.rules.pop(event.payload["rule_id"], None)

    def _apply_toggle_variants(self, event: ActionEvent) -> None:
        rid = event.payload["rule_id"]
        enabled = bool(event.payload["enabled"])
        rule = self.rule.rules.get(rid)
        if rule is None:
            return
        flags = VariantFlags.all() if enabled else VariantFlags.none()
        record = rule.to_json()
        for cond in record["includes"]:
            cond["flags"] = flags.to_json()
        if record.get("exclude"):
            record["exclude"]["flags"] = flags.to_json()
        self.rule.rules[rid] = Rule.from_json(record)

    # prompt strategy -----------------------------------------------------

    def _apply_create_prompt(self, event: ActionEvent) -> None:
        pid = event.payload["prompt_id"]
        self.prompt.prompts[pid] = Prompt.from_json(
            {**event.payload["prompt"], "id": pid}
        )
        self.prompt.next_id += 1

    def _apply_edit_prompt(self, event: ActionEvent) -> None:
        pid = event.payload["prompt_id"]
        if pid in self.prompt.prompts:
            self.prompt.prompts[pid] = Prompt.from_json(
                {**event.payload["prompt"], "id": pid}
            )

    def _apply_delete_prompt(self, event: ActionEvent) -> None:
        self.prompt.prompts.pop(event.payload["prompt_id"], None)

    def _apply_add_fewshot_example(self, event: ActionEvent) -> None:
        pid = event.payload["prompt_id"]
        prompt = self.prompt.prompts.get(pid)
        if prompt is None:
            return
        text = event.payload["text"]
        if event.payload.get("positive", True):
            prompt.positive_examples.append(text)
        else:
            prompt.negative_examples.append(text)

    # -- classification ---------------------------------------------------

    def classifier_state(self, strategy: str) -> dict:
        if strategy == "label":
            return self.label.classifier_state()
        if strategy == "rule":
            return self.rule.classifier_state()
        if strategy == "prompt":
            return self.prompt.classifier_state()
        raise ValidationError(f"unknown strategy: {strategy}")

    def predict(
        self,
        strategy: str,
        comment_ids: Sequence[str],
        cache: Optional[PromptVerdictCache] = None,
        provider=None,
        *,
        batch_size: int = 10,
        max_parallel: int = 1,
        untrained_keeps: bool = False,
    ) -> dict[str, Prediction]:
        """Per-comment decisions with strategy-specific explanations.

        ``untrained_keeps`` makes a missing label model predict Keep for
        everything (used by the snapshot engine, where early captures
        precede the first training round).
        """
        comments = [self.corpus.get(cid) for cid in comment_ids]
        if strategy == "label":
            if self.label.model is None:
                if not untrained_keeps:
                    raise ConflictError(
                        "label classifier is untrained; label more examples",
                        details={"hint": "submit at least one Keep and one Remove label"},
                    )
                return {c.id: Prediction(decision=Label.KEEP, explanation={}) for c in comments}
            out = {}
            embeddings = self._embeddings_for([c.id for c in comments])
            for c in comments:
                p = predict_proba(self.label.model, embeddings[c.id])
                decision = Label.REMOVE if p >= 0.5 else Label.KEEP
                out[c.id] = Prediction(decision=decision, explanation={"p_remove": p})
            return out
        if strategy == "rule":
            return {c.id: classify(self.rule.ordered(), c.text) for c in comments}
        if strategy == "prompt":
            if cache is None:
                cache = PromptVerdictCache()
            return evaluate(
                self.prompt.ordered(), comments, cache, provider,
                batch_size=batch_size, max_parallel=max_parallel,
            )
        raise ValidationError(f"unknown strategy: {strategy}")
