"""Deterministic keyword-rule mock of the LLM provider.

Batch requests are answered by flagging comments that contain a keyword of
the rule whose key appears in the rubric; phrase-suggestion and rubric-
improvement requests are answered from configurable maps (identity by
default). A call log supports cache assertions, and a fault-injection mode
emits garbage for the first N calls to exercise the parse-failure path.
"""

from __future__ import annotations

import json
import threading
from typing import Mapping, Sequence

from .render import parse_data_lines


class KeywordMockProvider:
    def __init__(
        self,
        rules: Mapping[str, Sequence[str]],
        *,
        suggestions: Mapping[str, Sequence[str]] | None = None,
        improvements: Mapping[str, str] | None = None,
        malformed_calls: int = 0,
    ):
        self.rules = {k: list(v) for k, v in rules.items()}
        self.suggestions = {k: list(v) for k, v in (suggestions or {}).items()}
        self.improvements = dict(improvements or {})
        self.malformed_calls = malformed_calls
        self.calls: list[dict] = []
        self._lock = threading.Lock()

    def reset_log(self) -> None:
        with self._lock:
            self.calls.clear()

    def _keywords_for(self, rubric: str) -> list[str]:
        lowered = rubric.lower()
        for key, keywords in self.rules.items():
            if key.lower() in lowered:
                return keywords
        return []

    def _log(self, record: dict, *, consume_malformed: bool = False) -> bool:
        """Record the call; True when this call should emit garbage."""
        with self._lock:
            self.calls.append(record)
            if consume_malformed and self.malformed_calls > 0:
                self.malformed_calls -= 1
                return True
            return False

    def complete(self, system: str, user: str) -> str:
        if "suggest up to 10 new short phrases" in system:
            self._log({"mode": "suggest", "user": user})
            lowered = user.lower()
            for key, phrases in self.suggestions.items():
                if key.lower() in lowered:
                    return json.dumps(phrases)
            return "[]"
        if "Rephrase the rubric" in system:
            self._log({"mode": "improve", "user": user})
            return self.improvements.get(user, user)

        rubric, entries = parse_data_lines(user)
        malformed = self._log(
            {"mode": "batch", "rubric": rubric, "indices": sorted(entries)},
            consume_malformed=True,
        )
        if malformed:
            return "Sorry, I cannot answer in the requested format today."
        keywords = self._keywords_for(rubric)
        results = []
        for index in sorted(entries):
            text = entries[index].lower()
            hit = any(kw.lower() in text for kw in keywords)
            results.append([index, 1 if hit else 0])
        return json.dumps({"results": results})


def mock_provider(spec: Mapping[str, Sequence[str]], **kwargs) -> KeywordMockProvider:
    """Build the mock from a {rubric substring -> keyword list} table."""
    return KeywordMockProvider(spec, **kwargs)
