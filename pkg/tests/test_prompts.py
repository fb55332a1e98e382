import hashlib
import json
import random

import pytest

from modkit.llm import FailingProvider, FunctionProvider
from modkit.prompts import (
    BatchParseError,
    KeywordMockProvider,
    Prompt,
    PromptVerdictCache,
    escape_comment_text,
    evaluate,
    improve_description,
    mock_provider,
    parse_data_lines,
    parse_response,
    render_system_prompt,
    render_user_message,
)
from modkit.types import Comment, Label

SYSTEM_PROMPT_SHA256 = "1ca64e329c59a4877e925574615588da9a919710dd236572d11b9f13655fbb48"


def comments(*texts):
    return [Comment(id=f"c{i}", text=t) for i, t in enumerate(texts, start=1)]


class TestSystemPrompt:
    def test_contains_prediction_instruction(self):
        assert "give a 1 (True) or 0 (False) prediction" in render_system_prompt()

    def test_contains_json_schema_instruction(self):
        assert '{"results": [(index, prediction), ...]}' in render_system_prompt()

    def test_template_hash_stable(self):
        digest = hashlib.sha256(render_system_prompt().encode("utf-8")).hexdigest()
        assert digest == SYSTEM_PROMPT_SHA256

    def test_byte_equals_asset(self):
        from importlib import resources

        asset = resources.files("modkit.prompts").joinpath("assets/system_prompt.txt")
        assert render_system_prompt().encode("utf-8") == asset.read_bytes()


class TestRenderUserMessage:
    def test_single_comment_line(self):
        p = Prompt(id="p", description="Remove spam.")
        message = render_user_message(p, ["hi"])
        assert "DATA <1> <hi>" in message

    def test_lines_numbered_in_input_order(self):
        p = Prompt(id="p", description="Remove spam.")
        message = render_user_message(p, ["first", "second"])
        assert message.index("DATA <1> <first>") < message.index("DATA <2> <second>")

    def test_angle_brackets_escaped(self):
        p = Prompt(id="p", description="Remove spam.")
        message = render_user_message(p, ["a<b"])
        assert "DATA <1> <a\\<b>" in message

    def test_golden_layout(self):
        p = Prompt(
            id="p",
            description="Remove insults.",
            positive_examples=["you fool"],
            negative_examples=["nice day"],
        )
        expected = (
            "Remove insults.\n"
            "\n"
            "Examples that SHOULD be removed:\n"
            '"you fool"\n'
            "\n"
            "Examples that should NOT be removed:\n"
            '"nice day"\n'
            "\n"
            "DATA <1> <hi>\n"
            "DATA <2> <a\\<b>"
        )
        assert render_user_message(p, ["hi", "a<b"]) == expected

    def test_example_blocks_omitted_when_empty(self):
        p = Prompt(id="p", description="Remove spam.")
        message = render_user_message(p, ["x"])
        assert "SHOULD be removed" not in message
        assert message == "Remove spam.\n\nDATA <1> <x>"

    def test_newlines_flattened(self):
        p = Prompt(id="p", description="Remove spam.")
        message = render_user_message(p, ["line one\nline two"])
        assert "DATA <1> <line one line two>" in message


class TestParseResponse:
    def test_plain_schema(self):
        assert parse_response('{"results": [[1, 1], [2, 0]]}', 2) == {
            1: Label.REMOVE,
            2: Label.KEEP,
        }

    def test_fenced_json(self):
        raw = 'Sure thing:\n```json\n{"results": [[1, 1], [2, 0]]}\n```\nDone.'
        assert parse_response(raw, 2) == {1: Label.REMOVE, 2: Label.KEEP}

    def test_tuple_parentheses_tolerated(self):
        raw = '{"results": [(1, 1), (2, 0)]}'
        assert parse_response(raw, 2) == {1: Label.REMOVE, 2: Label.KEEP}

    def test_too_many_missing_raises(self):
        with pytest.raises(BatchParseError) as err:
            parse_response('{"results": [[1, 1]]}', 10)
        assert err.value.raw == '{"results": [[1, 1]]}'

    def test_small_gap_tolerated(self):
        out = parse_response('{"results": [[1,1],[2,0],[3,1],[4,0]]}', 5)
        assert len(out) == 4

    def test_out_of_range_indices_dropped(self):
        out = parse_response('{"results": [[1,1],[2,0],[7,1]]}', 2)
        assert out == {1: Label.REMOVE, 2: Label.KEEP}

    def test_garbage_raises_with_raw(self):
        with pytest.raises(BatchParseError) as err:
            parse_response("no json here at all", 3)
        assert err.value.raw == "no json here at all"

    def test_object_entries_accepted(self):
        raw = '{"results": [{"index": 1, "prediction": 1}, {"index": 2, "prediction": 0}]}'
        assert parse_response(raw, 2) == {1: Label.REMOVE, 2: Label.KEEP}


class TestRoundTrip:
    def test_round_trips_indices_for_adversarial_texts(self):
        rng = random.Random(77)
        symbols = list("abc <>\\<<>>x ")
        p = Prompt(id="p", description="Remove nothing.")
        for _ in range(50):
            texts = [
                "".join(rng.choice(symbols) for _ in range(rng.randint(1, 12)))
                for _ in range(rng.randint(1, 7))
            ]
            message = render_user_message(p, texts)
            rubric, entries = parse_data_lines(message)
            assert rubric == "Remove nothing."
            assert sorted(entries) == list(range(1, len(texts) + 1))

    def test_texts_without_newlines_round_trip_exactly(self):
        p = Prompt(id="p", description="d")
        texts = ["a<b", ">>><<<", "plain", "ends with \\"]
        message = render_user_message(p, texts)
        _, entries = parse_data_lines(message)
        assert [entries[i] for i in range(1, 5)] == texts


class TestMockProvider:
    def test_spec_definition(self):
        provider = mock_provider({"insults": ["idiot"]})
        p = Prompt(id="p", description="Remove insults.")
        raw = provider.complete(render_system_prompt(), render_user_message(p, ["you idiot", "nice"]))
        assert json.loads(raw) == {"results": [[1, 1], [2, 0]]}

    def test_unmatched_prompt_keeps_everything(self):
        provider = mock_provider({"insults": ["idiot"]})
        p = Prompt(id="p", description="Remove long rants.")
        raw = provider.complete("", render_user_message(p, ["you idiot"]))
        assert json.loads(raw) == {"results": [[1, 0]]}

    def test_malformed_mode_emits_garbage(self):
        provider = mock_provider({"x": ["y"]}, malformed_calls=1)
        p = Prompt(id="p", description="x")
        raw = provider.complete("", render_user_message(p, ["y here"]))
        with pytest.raises(BatchParseError):
            parse_response(raw, 1)


class TestEvaluate:
    def setup_method(self):
        self.prompt_a = Prompt(id="A", description="Remove insults.")
        self.prompt_b = Prompt(id="B", description="Remove spam.")
        self.provider = mock_provider(
            {"insults": ["idiot"], "spam": ["buy now"]}
        )
        self.comments = comments("you idiot", "buy now!!", "lovely weather")

    def test_union_semantics_with_explanations(self):
        cache = PromptVerdictCache()
        out = evaluate([self.prompt_a, self.prompt_b], self.comments, cache, self.provider)
        assert out["c1"].decision is Label.REMOVE
        assert out["c1"].explanation == {"prompts": ["A"]}
        assert out["c2"].decision is Label.REMOVE
        assert out["c2"].explanation == {"prompts": ["B"]}
        assert out["c3"].decision is Label.KEEP
        assert out["c3"].explanation == {}

    def test_second_evaluation_issues_zero_calls(self):
        cache = PromptVerdictCache()
        evaluate([self.prompt_a, self.prompt_b], self.comments, cache, self.provider)
        self.provider.reset_log()
        out = evaluate([self.prompt_a, self.prompt_b], self.comments, cache, self.provider)
        assert self.provider.calls == []
        assert out["c1"].decision is Label.REMOVE

    def test_editing_one_prompt_requeries_only_it(self):
        cache = PromptVerdictCache()
        evaluate([self.prompt_a, self.prompt_b], self.comments, cache, self.provider)
        self.provider.reset_log()
        edited_a = Prompt(id="A", description="Remove insults immediately.")
        evaluate([edited_a, self.prompt_b], self.comments, cache, self.provider)
        rubrics = {c["rubric"] for c in self.provider.calls}
        assert rubrics == {"Remove insults immediately."}

    def test_batch_ceiling_division(self):
        cache = PromptVerdictCache()
        many = [Comment(id=f"m{i}", text=f"text {i}") for i in range(25)]
        provider = mock_provider({"insults": ["idiot"]})
        evaluate([self.prompt_a], many, cache, provider, batch_size=10)
        assert len(provider.calls) == 3

    def test_provider_failure_degrades_not_fails(self):
        cache = PromptVerdictCache()
        out = evaluate([self.prompt_a], self.comments, cache, FailingProvider())
        assert all(p.decision is Label.KEEP for p in out.values())
        assert all(p.explanation.get("degraded") for p in out.values())

    def test_malformed_then_retry_succeeds(self):
        cache = PromptVerdictCache()
        provider = mock_provider({"insults": ["idiot"]}, malformed_calls=1)
        out = evaluate([self.prompt_a], self.comments, cache, provider)
        assert out["c1"].decision is Label.REMOVE
        assert len(provider.calls) == 2  # one failed call plus one retry

    def test_cache_only_mode_degrades_missing(self):
        cache = PromptVerdictCache()
        cache.put(self.prompt_a.version, "c1", Label.REMOVE)
        out = evaluate([self.prompt_a], self.comments, cache, provider=None)
        assert out["c1"].decision is Label.REMOVE
        assert out["c2"].decision is Label.KEEP
        assert out["c2"].explanation == {"degraded": True}

    def test_batch_size_invariance(self):
        verdicts = {}
        for size in (1, 3, 10):
            cache = PromptVerdictCache()
            provider = mock_provider({"insults": ["idiot"], "spam": ["buy now"]})
            out = evaluate(
                [self.prompt_a, self.prompt_b], self.comments, cache, provider,
                batch_size=size,
            )
            verdicts[size] = {cid: p.decision for cid, p in out.items()}
        assert verdicts[1] == verdicts[3] == verdicts[10]

    def test_union_decomposition(self):
        rng = random.Random(5)
        vocabulary = ["alpha", "beta", "gamma", "delta"]
        pool = comments(*[" ".join(rng.sample(vocabulary, 2)) for _ in range(12)])
        for trial in range(20):
            kw1, kw2 = rng.sample(vocabulary, 2)
            p1 = Prompt(id="p1", description=f"Remove texts about {kw1}.")
            p2 = Prompt(id="p2", description=f"Remove texts about {kw2}.")
            spec = {kw1: [kw1], kw2: [kw2]}

            def removed(prompt_list):
                cache = PromptVerdictCache()
                out = evaluate(prompt_list, pool, cache, mock_provider(spec))
                return {cid for cid, p in out.items() if p.decision is Label.REMOVE}

            assert removed([p1, p2]) == removed([p1]) | removed([p2])

    def test_parallel_matches_serial(self):
        serial_cache = PromptVerdictCache()
        parallel_cache = PromptVerdictCache()
        serial = evaluate(
            [self.prompt_a, self.prompt_b], self.comments, serial_cache,
            mock_provider({"insults": ["idiot"], "spam": ["buy now"]}),
            batch_size=1, max_parallel=1,
        )
        parallel = evaluate(
            [self.prompt_a, self.prompt_b], self.comments, parallel_cache,
            mock_provider({"insults": ["idiot"], "spam": ["buy now"]}),
            batch_size=1, max_parallel=4,
        )
        assert {k: v.to_json() for k, v in serial.items()} == {
            k: v.to_json() for k, v in parallel.items()
        }


class TestCachePersistence:
    def test_jsonl_round_trip(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        cache = PromptVerdictCache(path)
        cache.put("v1", "c1", Label.REMOVE)
        cache.put("v1", "c2", Label.KEEP)
        reloaded = PromptVerdictCache(path)
        assert reloaded.get("v1", "c1") is Label.REMOVE
        assert reloaded.get("v1", "c2") is Label.KEEP
        assert len(reloaded) == 2

    def test_version_keying_isolates_edits(self):
        cache = PromptVerdictCache()
        p = Prompt(id="p", description="one")
        cache.put(p.version, "c1", Label.REMOVE)
        edited = Prompt(id="p", description="two")
        assert cache.get(edited.version, "c1") is None
        assert cache.get(p.version, "c1") is Label.REMOVE


class TestImproveDescription:
    def test_identity_mock(self):
        provider = FunctionProvider(lambda s, u: u)
        assert improve_description("remove mean stuff", provider) == "remove mean stuff"

    def test_mapped_rewrite(self):
        mapping = {"remove mean stuff": "Remove texts containing personal insults"}
        provider = FunctionProvider(lambda s, u: mapping.get(u, u))
        assert (
            improve_description("remove mean stuff", provider)
            == "Remove texts containing personal insults"
        )

    def test_failure_returns_original_with_warning(self, caplog):
        with caplog.at_level("WARNING"):
            out = improve_description("remove mean stuff", FailingProvider())
        assert out == "remove mean stuff"
        assert any("degraded" in r.message for r in caplog.records)


class TestEscaping:
    def test_escape_contract(self):
        assert escape_comment_text("a<b") == "a\\<b"
        assert escape_comment_text("a>b") == "a\\>b"
