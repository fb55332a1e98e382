"""LLM-assisted suggestion of phrases similar to ones the user already has.

Provider failures degrade to an empty suggestion list with a logged warning
so that rule authoring is never blocked on the network.
"""

from __future__ import annotations

import json
import logging
import re
from typing import Sequence

from ..errors import ModkitError, ValidationError
from ..llm import LLMProvider

logger = logging.getLogger(__name__)

MAX_SUGGESTIONS = 10

SUGGEST_SYSTEM_PROMPT = (
    "You help a user grow a list of phrases for a personal text filter. "
    "Given the user's existing phrases, suggest up to 10 new short phrases "
    "with a similar meaning, including common synonyms and close variants. "
    'Respond with a JSON array of strings only, e.g. ["first", "second"].'
)


def _parse_phrase_array(raw: str) -> list[str]:
    candidates = [raw.strip()]
    fenced = re.findall(r"```(?:json)?\s*(.*?)```", raw, re.DOTALL)
    candidates.extend(f.strip() for f in fenced)
    bracketed = re.findall(r"\[[^\[\]]*\]", raw, re.DOTALL)
    candidates.extend(bracketed)
    for candidate in candidates:
        try:
            value = json.loads(candidate)
        except (json.JSONDecodeError, ValueError):
            continue
        if isinstance(value, list) and all(isinstance(v, str) for v in value):
            return value
    # last resort: one suggestion per line, stripped of list bullets
    lines = [re.sub(r"^[\s\-\*\d\.\)]+", "", ln).strip() for ln in raw.splitlines()]
    return [ln for ln in lines if ln]


def suggest_similar_phrases(
    existing: Sequence[str], provider: LLMProvider, limit: int = MAX_SUGGESTIONS
) -> list[str]:
    """Up to ``limit`` new phrases, deduplicated case-insensitively.

    Suggestions that repeat an existing phrase are dropped; any provider
    failure yields an empty list and a warning instead of an error.
    """
    if not existing:
        raise ValidationError("need at least one existing phrase to suggest from")
    user = "Existing phrases:\n" + "\n".join(f"- {p}" for p in existing)
    try:
        raw = provider.complete(SUGGEST_SYSTEM_PROMPT, user)
    except (ModkitError, OSError) as exc:
        logger.warning("phrase suggestion degraded to empty list: %s", exc)
        return []

    seen = {p.strip().lower() for p in existing}
    suggestions: list[str] = []
    for phrase in _parse_phrase_array(raw):
        cleaned = phrase.strip()
        key = cleaned.lower()
        if not cleaned or key in seen:
            continue
        seen.add(key)
        suggestions.append(cleaned)
        if len(suggestions) >= limit:
            break
    return suggestions
