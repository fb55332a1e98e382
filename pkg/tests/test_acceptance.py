"""Acceptance suite.

One test per criterion; each prints a PASS/FAIL line so the run log reads
as a checklist. Oracles come from tests/oracles.py and stay independent of
the engines they check.
"""

import contextlib
import json
import random
import string
import time

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from modkit.cli import main as cli_main
from modkit.corpus import CorpusConfig, balance, ingest, make_split, mark_toxic
from modkit.evaluation import (
    ActionKindRegistry,
    ConfusionCounts,
    EventLog,
    metrics_from_counts,
    paired_compare,
)
from modkit.labeling import (
    CachingEmbedder,
    Embedding,
    HashedBowProvider,
    LabeledExample,
    bootstrap_batch,
    make_embedding_provider,
    predict_proba,
    train,
    uncertainty_sample,
)
from modkit.prompts import (
    Prompt,
    PromptVerdictCache,
    evaluate,
    mock_provider,
    parse_data_lines,
    render_system_prompt,
    render_user_message,
)
from modkit.rules import VariantFlags, classify, compile_phrase, match_rule
from modkit.service import ServiceConfig, compute_snapshots, create_app
from modkit.service.store import SessionStore
from modkit.types import Comment, Label

from .conftest import FakeClock, PLANTED_KEYWORDS
from .oracles import (
    OracleFlags,
    gnb_oracle_fit,
    gnb_oracle_predict,
    naive_classify,
    naive_token_match,
    obfuscate_case,
    obfuscate_repeat,
    obfuscate_substitute,
    recompute_metrics,
)
from .test_rules import random_rule, random_text, rule_to_oracle

import numpy as np


@contextlib.contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"[ACCEPTANCE] {name}: PASS")


# ---------------------------------------------------------------------------
# 1. Rule-variant suite
# ---------------------------------------------------------------------------

# Known-correct inflections, frozen independently of the shipped lexicon.
NOUN_PAIRS = [
    ("dog", "dogs"), ("cat", "cats"), ("apple", "apples"), ("bus", "buses"),
    ("box", "boxes"), ("church", "churches"), ("dish", "dishes"),
    ("party", "parties"), ("city", "cities"), ("day", "days"), ("key", "keys"),
    ("child", "children"), ("man", "men"), ("woman", "women"), ("foot", "feet"),
    ("tooth", "teeth"), ("mouse", "mice"), ("person", "people"),
    ("wolf", "wolves"), ("knife", "knives"), ("life", "lives"),
    ("leaf", "leaves"), ("sheep", "sheep"), ("deer", "deer"),
    ("crisis", "crises"), ("analysis", "analyses"),
]
VERB_PAIRS = [
    ("find", "found"), ("find", "finds"), ("find", "finding"),
    ("go", "went"), ("go", "gone"), ("go", "goes"), ("go", "going"),
    ("take", "took"), ("take", "taken"), ("take", "takes"), ("take", "taking"),
    ("kill", "killed"), ("kill", "kills"), ("kill", "killing"),
    ("stop", "stopped"), ("stop", "stopping"), ("stop", "stops"),
    ("try", "tried"), ("try", "tries"), ("try", "trying"),
    ("love", "loved"), ("love", "loving"), ("love", "loves"),
    ("watch", "watched"), ("watch", "watches"), ("watch", "watching"),
    ("play", "played"), ("play", "plays"), ("play", "playing"),
    ("see", "saw"), ("see", "seen"), ("see", "sees"), ("see", "seeing"),
    ("know", "knew"), ("know", "known"), ("know", "knows"),
    ("think", "thought"), ("think", "thinking"),
    ("make", "made"), ("make", "making"),
    ("run", "ran"), ("run", "running"), ("run", "runs"),
    ("sit", "sat"), ("sit", "sitting"),
    ("teach", "taught"), ("teach", "teaches"),
    ("catch", "caught"), ("catch", "catching"),
    ("buy", "bought"), ("buy", "buying"),
    ("fight", "fought"), ("fight", "fighting"),
    ("break", "broke"), ("break", "broken"), ("break", "breaking"),
    ("choose", "chose"), ("choose", "chosen"), ("choose", "choosing"),
    ("eat", "ate"), ("eat", "eaten"), ("eat", "eating"),
    ("die", "died"), ("die", "dying"),
]

OBFUSCATION_SEEDS = ["cool", "idiot", "trust"]


def _random_reject_words(rng, n, is_legit):
    """Random lowercase words filtered so none is a legitimate variant."""
    words = []
    while len(words) < n:
        candidate = "".join(
            rng.choice(string.ascii_lowercase) for _ in range(rng.randint(3, 9))
        )
        if not is_legit(candidate):
            words.append(candidate)
    return words


class TestRuleVariantSuite:
    def test_variant_suite(self):
        started = time.monotonic()
        rng = random.Random(20240)
        with criterion("rule-variant suite"):
            generator_classes = [
                ("repeated_letters", VariantFlags(repeated_letters=True), obfuscate_repeat),
                ("case_insensitive", VariantFlags(case_insensitive=True), obfuscate_case),
                ("char_substitution", VariantFlags(char_substitution=True), obfuscate_substitute),
            ]
            for name, flags, obfuscate in generator_classes:
                oracle_flags = OracleFlags(**{name: True})
                for phrase in OBFUSCATION_SEEDS:
                    compiled = compile_phrase(phrase, flags)
                    for _ in range(100):
                        probe = obfuscate(rng, phrase)
                        assert compiled.search(probe), (name, phrase, probe)
                    rejects = _random_reject_words(
                        rng, 100,
                        is_legit=lambda w: naive_token_match(phrase, w, oracle_flags),
                    )
                    for word in rejects:
                        assert not compiled.search(word), (name, phrase, word)

            inflection_classes = [
                ("noun_forms", VariantFlags(noun_forms=True), NOUN_PAIRS),
                ("verb_forms", VariantFlags(verb_forms=True), VERB_PAIRS),
            ]
            for name, flags, pairs in inflection_classes:
                samples = [rng.choice(pairs) for _ in range(100)]
                for base, form in samples:
                    assert compile_phrase(base, flags).search(form), (name, base, form)
                valid_forms = {f for _, f in pairs} | {b for b, _ in pairs}
                for base, _ in pairs[:10]:
                    compiled = compile_phrase(base, flags)
                    own_forms = {f for b, f in pairs if b == base} | {base}
                    rejects = _random_reject_words(
                        rng, 10, is_legit=lambda w: w in own_forms
                    )
                    for word in rejects:
                        assert not compiled.search(word), (name, base, word)

            # the paper's literal examples, each under its variant class
            assert compile_phrase("cool", VariantFlags(repeated_letters=True)).search("coooool")
            assert compile_phrase("cool", VariantFlags(char_substitution=True)).search("co0l")
            assert compile_phrase("cool", VariantFlags(case_insensitive=True)).search("Cool")
            assert compile_phrase("apple", VariantFlags(noun_forms=True)).search("apples")
            assert compile_phrase("find", VariantFlags(verb_forms=True)).search("found")

            elapsed = time.monotonic() - started
            assert elapsed < 5.0, f"variant suite took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 2. Rule-semantics oracle
# ---------------------------------------------------------------------------

class TestRuleSemanticsOracle:
    def test_semantics_oracle(self):
        started = time.monotonic()
        with criterion("rule-semantics oracle"):
            rng = random.Random(424242)
            for case in range(500):
                rules = [random_rule(rng, f"r{i}") for i in range(rng.randint(1, 3))]
                text = random_text(rng)
                got = classify(rules, text).decision is Label.REMOVE
                expected = naive_classify([rule_to_oracle(r) for r in rules], text)
                assert got == expected, (case, text)

            texts = [random_text(rng) for _ in range(30)]
            from modkit.rules import Condition, ConditionKind, Rule
            from .test_rules import ALPHABET

            for mutation in range(200):
                rule = random_rule(rng, "m")
                extra = rng.choice(ALPHABET)
                before = {t for t in texts if match_rule(rule, t)}
                if mutation % 2 == 0:
                    idx = rng.randrange(len(rule.includes))
                    grown = Condition(
                        kind=ConditionKind.INCLUDE,
                        phrases=rule.includes[idx].phrases + (extra,),
                        flags=rule.includes[idx].flags,
                    )
                    includes = tuple(
                        grown if i == idx else c for i, c in enumerate(rule.includes)
                    )
                    mutated = Rule(name="m", includes=includes, exclude=rule.exclude)
                    after = {t for t in texts if match_rule(mutated, t)}
                    assert before <= after
                else:
                    if rule.exclude is None:
                        exc = Condition(
                            kind=ConditionKind.EXCLUDE, phrases=(extra,),
                            flags=rule.includes[0].flags,
                        )
                    else:
                        exc = Condition(
                            kind=ConditionKind.EXCLUDE,
                            phrases=rule.exclude.phrases + (extra,),
                            flags=rule.exclude.flags,
                        )
                    mutated = Rule(name="m", includes=rule.includes, exclude=exc)
                    after = {t for t in texts if match_rule(mutated, t)}
                    assert after <= before

            elapsed = time.monotonic() - started
            assert elapsed < 10.0, f"semantics oracle took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 3. Naive Bayes oracle equivalence
# ---------------------------------------------------------------------------

class TestNaiveBayesOracle:
    def test_oracle_equivalence(self):
        with criterion("naive bayes oracle equivalence"):
            rng = random.Random(314159)
            for case in range(100):
                n = rng.randint(4, 20)
                n_remove = rng.randint(1, n - 1)
                points = {"Remove": [], "Keep": []}
                examples, embeddings = [], {}
                for i in range(n):
                    label = Label.REMOVE if i < n_remove else Label.KEEP
                    vec = [rng.uniform(-3, 3), rng.uniform(-3, 3)]
                    cid = f"c{i:03d}"
                    points[label.value].append(vec)
                    examples.append(LabeledExample(cid, label))
                    embeddings[cid] = Embedding(vector=np.asarray(vec))
                model = train(examples, embeddings)
                params = gnb_oracle_fit(points)

                for _ in range(5):
                    q = [rng.uniform(-4, 4), rng.uniform(-4, 4)]
                    got = predict_proba(model, Embedding(vector=np.asarray(q)))
                    expected = gnb_oracle_predict(params, q, "Remove")
                    assert got == pytest.approx(expected, abs=1e-6), case

                # duplication invariance
                doubled_examples = list(examples)
                doubled_embeddings = dict(embeddings)
                for ex in examples:
                    clone = ex.comment_id + "d"
                    doubled_examples.append(LabeledExample(clone, ex.label))
                    doubled_embeddings[clone] = embeddings[ex.comment_id]
                doubled = train(doubled_examples, doubled_embeddings)
                probe = Embedding(vector=np.asarray([0.31, -0.17]))
                assert predict_proba(doubled, probe) == pytest.approx(
                    predict_proba(model, probe), abs=1e-9
                )

                # uncertainty sampling returns the argmin-|p-0.5| set
                pool_ids = []
                pool_embeddings = {}
                for j in range(rng.randint(3, 12)):
                    pid = f"p{j:03d}"
                    pool_ids.append(pid)
                    pool_embeddings[pid] = Embedding(
                        vector=np.asarray([rng.uniform(-4, 4), rng.uniform(-4, 4)])
                    )
                k = rng.randint(1, len(pool_ids))
                batch = uncertainty_sample(model, pool_ids, pool_embeddings, k)
                ranked = sorted(
                    pool_ids,
                    key=lambda pid: (
                        abs(predict_proba(model, pool_embeddings[pid]) - 0.5), pid,
                    ),
                )
                assert list(batch.comment_ids) == ranked[:k], case


# ---------------------------------------------------------------------------
# 4. Prompt protocol golden tests
# ---------------------------------------------------------------------------

class TestPromptProtocol:
    def test_protocol_golden(self):
        with criterion("prompt protocol golden tests"):
            from importlib import resources

            asset = resources.files("modkit.prompts").joinpath("assets/system_prompt.txt")
            assert render_system_prompt().encode("utf-8") == asset.read_bytes()

            rng = random.Random(2718)
            glyphs = list("ab <>\\<<>>! ")
            prompt = Prompt(id="p", description="Remove nothing.")
            for _ in range(50):
                texts = [
                    "".join(rng.choice(glyphs) for _ in range(rng.randint(1, 15)))
                    for _ in range(rng.randint(1, 8))
                ]
                message = render_user_message(prompt, texts)
                _, entries = parse_data_lines(message)
                assert sorted(entries) == list(range(1, len(texts) + 1))

            # cache behavior under the mock provider
            comments = [
                Comment(id=f"c{i}", text=t)
                for i, t in enumerate(
                    ["you idiot", "buy now!!", "lovely weather", "slurs here"], start=1
                )
            ]
            prompt_a = Prompt(id="A", description="Remove insults.")
            prompt_b = Prompt(id="B", description="Remove spam.")
            provider = mock_provider({"insults": ["idiot"], "spam": ["buy now"]})
            cache = PromptVerdictCache()
            evaluate([prompt_a, prompt_b], comments, cache, provider)
            provider.reset_log()
            evaluate([prompt_a, prompt_b], comments, cache, provider)
            assert provider.calls == []

            provider.reset_log()
            edited_a = Prompt(id="A", description="Remove insults right away.")
            evaluate([edited_a, prompt_b], comments, cache, provider)
            assert {c["rubric"] for c in provider.calls} == {
                "Remove insults right away."
            }

            # union decomposition over 50 random prompt pairs
            vocabulary = ["alpha", "beta", "gamma", "delta", "epsilon"]
            pool = [
                Comment(id=f"u{i}", text=" ".join(rng.sample(vocabulary, 2)))
                for i in range(14)
            ]
            for _ in range(50):
                kw1, kw2 = rng.sample(vocabulary, 2)
                p1 = Prompt(id="p1", description=f"Remove texts about {kw1}.")
                p2 = Prompt(id="p2", description=f"Remove texts about {kw2}.")
                spec = {kw1: [kw1], kw2: [kw2]}

                def removed(prompt_list):
                    out = evaluate(
                        prompt_list, pool, PromptVerdictCache(), mock_provider(spec)
                    )
                    return {
                        cid for cid, pred in out.items()
                        if pred.decision is Label.REMOVE
                    }

                assert removed([p1, p2]) == removed([p1]) | removed([p2])


# ---------------------------------------------------------------------------
# 5. Metrics oracle
# ---------------------------------------------------------------------------

class TestMetricsOracle:
    def test_metrics_oracle(self):
        with criterion("metrics oracle"):
            rng = random.Random(1618)
            for _ in range(1000):
                tp, fp, fn, tn = (rng.randint(0, 50) for _ in range(4))
                if tp + fp + fn + tn == 0:
                    tn = 1
                got = metrics_from_counts(ConfusionCounts(tp, fp, fn, tn))
                expected = recompute_metrics(tp, fp, fn, tn)
                for name in ("accuracy", "precision", "recall", "f1"):
                    assert getattr(got, name) == pytest.approx(expected[name], abs=1e-12)

            worked = metrics_from_counts(ConfusionCounts(tp=3, fp=1, fn=2, tn=4))
            assert worked.precision == pytest.approx(0.75)
            assert worked.recall == pytest.approx(0.60)
            assert worked.f1 == pytest.approx(0.6667, abs=1e-4)
            assert worked.accuracy == pytest.approx(0.70)


# ---------------------------------------------------------------------------
# 6. Dataset pipeline
# ---------------------------------------------------------------------------

class TestDatasetPipeline:
    def dump(self, n=1200):
        # toxicity scores evenly spread over [0.4, 1.0]: exactly 600 above 0.7
        return [
            {
                "id": f"d{i:05d}",
                "text": f"comment number {i} with enough words to pass the length filter",
                "video_id": f"v{i % 3}",
                "is_reply": False,
                "toxicity_score": 0.4 + 0.6 * i / (n - 1),
            }
            for i in range(n)
        ]

    def test_pipeline(self):
        with criterion("dataset pipeline"):
            cfg = CorpusConfig(target_size=800, test_size=100, seed=77)
            corpus, report = ingest(self.dump(), cfg)
            assert report.accepted == 1200
            balanced = balance(corpus, cfg)
            marks = mark_toxic(balanced, cfg.toxic_threshold)
            assert len(balanced) == 800
            assert sum(marks.values()) == 400
            assert sum(1 for v in marks.values() if not v) == 400

            split = make_split(balanced, cfg, "participant-1")
            assert len(split.train_ids) == 700
            assert len(split.test_ids) == 100
            assert not set(split.train_ids) & set(split.test_ids)

            # determinism per seed
            balanced_again = balance(ingest(self.dump(), cfg)[0], cfg)
            assert balanced.ids() == balanced_again.ids()
            assert make_split(balanced_again, cfg, "participant-1") == split

            different_seed = CorpusConfig(target_size=800, test_size=100, seed=78)
            assert balance(corpus, different_seed).ids() != balanced.ids()


# ---------------------------------------------------------------------------
# 7. End-to-end scripted session
# ---------------------------------------------------------------------------

class ScriptedAgent:
    """Plays all three strategies against the service like a participant."""

    def __init__(self, client: TestClient, clock: FakeClock, sid: str):
        self.client = client
        self.clock = clock
        self.sid = sid

    def post(self, path, body=None, expect=(200, 201)):
        response = self.client.post(f"/sessions/{self.sid}{path}", json=body or {})
        assert response.status_code in expect, (path, response.text)
        return response.json()

    def get(self, path, **params):
        response = self.client.get(f"/sessions/{self.sid}{path}", params=params)
        assert response.status_code == 200, (path, response.text)
        return response.json()

    def truth_for(self, text: str) -> str:
        return "Remove" if any(kw in text for kw in PLANTED_KEYWORDS) else "Keep"

    def poll(self, job_id: str, tries: int = 200) -> dict:
        for _ in range(tries):
            got = self.get(f"/jobs/{job_id}")
            if got["status"] != "pending":
                assert got["status"] == "done", got
                return got
        raise AssertionError("job never completed")

    def label_ground_truth(self):
        comments = self.get("/comments", split="test", limit=50)["comments"]
        labels = {c["id"]: self.truth_for(c["text"]) for c in comments}
        self.post("/ground-truth", {"labels": labels})
        self.post("/ground-truth/finalize")

    def play_label(self, rounds=9, k=10):
        self.post("/strategies/label/open")
        for _ in range(rounds):
            batch = self.post("/label/load-more", {"k": k})["batch"]
            for item in batch:
                self.clock.advance(2)
                self.post(
                    "/label/mark",
                    {"comment_id": item["id"], "label": self.truth_for(item["text"])},
                )
            self.clock.advance(10)
        self.clock.advance(5)
        self.post("/strategies/label/finish")
        metrics = self.get("/strategies/label/metrics")["metrics"]
        closed = self.post("/strategies/label/close")
        return metrics, closed

    def play_rule(self):
        self.post("/strategies/rule/open")
        self.clock.advance(10)
        created = self.post(
            "/rules",
            {"name": "nonsense filter",
             "includes": [{"phrases": [PLANTED_KEYWORDS[0]], "flags": {}}]},
        )
        self.clock.advance(30)
        edited = self.client.put(
            f"/sessions/{self.sid}/rules/{created['rule_id']}",
            json={"name": "nonsense filter",
                  "includes": [{"phrases": PLANTED_KEYWORDS, "flags": {}}]},
        )
        assert edited.status_code == 200
        self.clock.advance(30)
        applied = self.post(
            "/strategies/rule/apply", {"target": "train_page", "limit": 20}
        )
        assert applied["status"] == "done"
        self.clock.advance(25)
        self.post("/strategies/rule/finish")
        metrics = self.get("/strategies/rule/metrics")["metrics"]
        closed = self.post("/strategies/rule/close")
        return metrics, closed

    def play_prompt(self):
        self.post("/strategies/prompt/open")
        self.clock.advance(5)
        created = self.post(
            "/prompts",
            {"description": "Remove nonsense words.",
             "positive_examples": [], "negative_examples": []},
        )
        pid = created["prompt_id"]
        self.clock.advance(30)
        job = self.post("/strategies/prompt/apply", {"target": "train_page", "limit": 20})
        self.poll(job["job_id"])
        self.clock.advance(30)
        self.post(
            f"/prompts/{pid}/examples",
            {"text": f"total {PLANTED_KEYWORDS[0]} rubbish", "positive": True},
        )
        job = self.post("/strategies/prompt/apply", {"target": "train_page", "limit": 20})
        self.poll(job["job_id"])
        self.clock.advance(30)
        self.post("/strategies/prompt/finish")
        metrics = self.get("/strategies/prompt/metrics")["metrics"]
        closed = self.post("/strategies/prompt/close")
        return metrics, closed


class TestEndToEndScriptedSession:
    def test_scripted_session(self, tmp_path, synthetic_corpus_dir, fake_clock):
        started = time.monotonic()
        with criterion("end-to-end scripted session"):
            config = ServiceConfig(
                data_dir=tmp_path / "data",
                corpus_dir=synthetic_corpus_dir,
                llm={"mock": {"rules": {"nonsense words": PLANTED_KEYWORDS}}},
                default_seed=99,
            )
            client = TestClient(create_app(config, clock=fake_clock))
            sid = "e2e"
            response = client.post(
                "/sessions",
                json={
                    "session_id": sid, "corpus_id": "synthetic", "test_size": 50,
                    "strategy_order": ["label", "rule", "prompt"],
                },
            )
            assert response.status_code == 201

            agent = ScriptedAgent(client, fake_clock, sid)
            agent.label_ground_truth()

            finals = {}
            finals["label"] = agent.play_label()
            finals["rule"] = agent.play_rule()
            finals["prompt"] = agent.play_prompt()

            for strategy, (metrics, _) in finals.items():
                assert metrics["f1"] >= 0.9, (strategy, metrics)

            # snapshots exist at every 30s of active time
            for strategy in ("label", "rule", "prompt"):
                snapshots = agent.get(f"/strategies/{strategy}/snapshots")["snapshots"]
                ts = [s["t_active_seconds"] for s in snapshots]
                assert ts == sorted(ts)
                boundary = [t for t in ts if t % 30 == 0]
                expected_boundaries = list(range(30, max(ts) - max(ts) % 30 + 1, 30))
                assert boundary == expected_boundaries, (strategy, ts)

            # replaying the event log reproduces snapshots byte-identically
            registry = ActionKindRegistry()
            store = SessionStore(
                config.data_dir, config.corpus_dir,
                embedder_factory=lambda: CachingEmbedder(
                    make_embedding_provider(config.embedding)
                ),
                registry=registry,
            )
            directory = store.session_dir(sid)
            events = EventLog(directory.events_path, registry, durable=False).read_all()
            cache = PromptVerdictCache(directory.cache_path)
            for strategy in ("label", "rule", "prompt"):
                recomputed = compute_snapshots(
                    events, store.corpus("synthetic"),
                    CachingEmbedder(make_embedding_provider(config.embedding)),
                    cache, strategy,
                )
                replayed_bytes = "".join(
                    json.dumps(s.to_json(), sort_keys=True) + "\n" for s in recomputed
                ).encode("utf-8")
                persisted_bytes = directory.snapshots_path(strategy).read_bytes()
                assert replayed_bytes == persisted_bytes, strategy

            # eval report over the session store emits well-formed series
            out_dir = tmp_path / "report"
            result = CliRunner().invoke(
                cli_main,
                ["eval", "report", "--sessions", str(config.data_dir / "sessions"),
                 "--out", str(out_dir)],
            )
            assert result.exit_code == 0, result.output
            report = json.loads((out_dir / "report.json").read_text())
            series_lines = (out_dir / "series.csv").read_text().strip().splitlines()
            assert series_lines[0] == "strategy,t_seconds,metric,mean,n"
            for strategy in ("label", "rule", "prompt"):
                assert strategy in report["strategies"]
                rows = [ln for ln in series_lines[1:] if ln.startswith(f"{strategy},")]
                f1_ticks = [
                    int(ln.split(",")[1]) for ln in rows if ln.split(",")[2] == "f1"
                ]
                assert f1_ticks and f1_ticks == list(range(30, max(f1_ticks) + 1, 30))

            elapsed = time.monotonic() - started
            assert elapsed < 60.0, f"end-to-end session took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 8. Paired-comparison arithmetic
# ---------------------------------------------------------------------------

class TestPairedComparisonArithmetic:
    def test_arithmetic(self):
        with criterion("paired-comparison arithmetic"):
            cmp = paired_compare({"s1": (0.7, 0.5), "s2": (0.5, 0.5)})
            assert cmp.estimate == pytest.approx(0.1, abs=1e-15)
            assert cmp.std_err == pytest.approx(0.1, abs=1e-15)

            flat = paired_compare({f"s{i}": (0.6, 0.5) for i in range(3)})
            assert flat.estimate == pytest.approx(0.1, abs=1e-15)
            assert flat.std_err == 0.0

            rng = random.Random(9)
            pairs = {f"s{i}": (rng.random(), rng.random()) for i in range(12)}
            forward = paired_compare(pairs)
            backward = paired_compare({k: (b, a) for k, (a, b) in pairs.items()})
            assert forward.estimate == pytest.approx(-backward.estimate, abs=1e-12)
            assert forward.std_err == pytest.approx(backward.std_err, abs=1e-12)
