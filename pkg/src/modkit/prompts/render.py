"""Wire format for prompt batches: the fixed system prompt, the
``DATA <i> <text>`` user message, and tolerant response parsing."""

from __future__ import annotations

import json
import logging
import re
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..errors import ModkitError
from ..types import Label
from .model import Prompt

logger = logging.getLogger(__name__)

POSITIVE_HEADER = "Examples that SHOULD be removed:"
NEGATIVE_HEADER = "Examples that should NOT be removed:"

# More than this fraction of missing indices fails the whole batch.
MISSING_INDEX_TOLERANCE = 0.2


class BatchParseError(ModkitError):
    """The provider response could not be mapped onto the batch."""

    code = "batch_parse_error"

    def __init__(self, message: str, raw: str):
        super().__init__(message, details={"raw": raw})
        self.raw = raw


@lru_cache(maxsize=1)
def render_system_prompt() -> str:
    """The fixed system prompt, stored as a versioned template asset."""
    asset = resources.files("modkit.prompts").joinpath("assets/system_prompt.txt")
    return asset.read_text(encoding="utf-8")


def escape_comment_text(text: str) -> str:
    """Angle brackets are protocol markers; newlines would break the
    line-oriented format, so they flatten to spaces."""
    return (
        text.replace("<", "\\<")
        .replace(">", "\\>")
        .replace("\r\n", " ")
        .replace("\n", " ")
        .replace("\r", " ")
    )


def unescape_comment_text(text: str) -> str:
    return text.replace("\\<", "<").replace("\\>", ">")


def render_user_message(prompt: Prompt, comment_texts: Sequence[str]) -> str:
    """Rubric section followed by one ``DATA <i> <text>`` line per comment."""
    if not comment_texts:
        raise ValueError("a batch needs at least one comment")
    sections = [prompt.description.strip()]
    if prompt.positive_examples:
        lines = [POSITIVE_HEADER] + [f'"{ex}"' for ex in prompt.positive_examples]
        sections.append("\n".join(lines))
    if prompt.negative_examples:
        lines = [NEGATIVE_HEADER] + [f'"{ex}"' for ex in prompt.negative_examples]
        sections.append("\n".join(lines))
    data_lines = "\n".join(
        f"DATA <{i}> <{escape_comment_text(text)}>"
        for i, text in enumerate(comment_texts, start=1)
    )
    sections.append(data_lines)
    return "\n\n".join(sections)


_DATA_LINE_RE = re.compile(r"^DATA <(\d+)> <(.*)>$")


def parse_data_lines(user_message: str) -> tuple[str, dict[int, str]]:
    """Split a rendered user message back into (rubric, index -> text).

    Used by the deterministic mock provider; the rubric is everything
    before the first DATA line.
    """
    rubric_lines: list[str] = []
    entries: dict[int, str] = {}
    for line in user_message.splitlines():
        m = _DATA_LINE_RE.match(line)
        if m:
            entries[int(m.group(1))] = unescape_comment_text(m.group(2))
        elif not entries:
            rubric_lines.append(line)
    return "\n".join(rubric_lines).strip(), entries


def _json_object_candidates(raw: str) -> list[str]:
    """Balanced-brace substrings of raw, in text order."""
    candidates = []
    depth = 0
    start = -1
    for i, ch in enumerate(raw):
        if ch == "{":
            if depth == 0:
                start = i
            depth += 1
        elif ch == "}" and depth > 0:
            depth -= 1
            if depth == 0 and start >= 0:
                candidates.append(raw[start : i + 1])
                start = -1
    return candidates


def _coerce_results(value) -> list[tuple[int, int]]:
    pairs = []
    for entry in value:
        if isinstance(entry, (list, tuple)) and len(entry) >= 2:
            idx, pred = entry[0], entry[1]
        elif isinstance(entry, dict) and "index" in entry and "prediction" in entry:
            idx, pred = entry["index"], entry["prediction"]
        else:
            continue
        try:
            idx = int(idx)
            pred = int(bool(int(pred)))
        except (TypeError, ValueError):
            continue
        pairs.append((idx, pred))
    return pairs


def parse_response(raw: str, expected_n: int) -> dict[int, Label]:
    """Extract per-index verdicts from a provider response.

    Tolerates code fences, surrounding prose, and tuple-style parentheses.
    Indices outside 1..expected_n are dropped with a warning. Raises
    BatchParseError when nothing parseable is found or more than 20% of
    the expected indices are missing.
    """
    if expected_n < 1:
        raise ValueError("expected_n must be >= 1")
    candidates = [raw] + _json_object_candidates(raw)
    results = None
    for candidate in candidates:
        for attempt in (candidate, candidate.replace("(", "[").replace(")", "]")):
            try:
                value = json.loads(attempt)
            except (json.JSONDecodeError, ValueError):
                continue
            if isinstance(value, dict) and isinstance(value.get("results"), list):
                results = value["results"]
                break
        if results is not None:
            break
    if results is None:
        raise BatchParseError("no JSON object with a results array found", raw=raw)

    verdicts: dict[int, Label] = {}
    for idx, pred in _coerce_results(results):
        if not (1 <= idx <= expected_n):
            logger.warning("dropping out-of-range index %d (batch of %d)", idx, expected_n)
            continue
        verdicts[idx] = Label.REMOVE if pred == 1 else Label.KEEP

    missing = expected_n - len(verdicts)
    if missing > MISSING_INDEX_TOLERANCE * expected_n:
        raise BatchParseError(
            f"{missing} of {expected_n} indices missing from response", raw=raw
        )
    return verdicts
