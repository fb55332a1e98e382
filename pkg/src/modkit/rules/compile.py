"""Compile phrases into generalized regular expressions.

Each phrase becomes a single pattern that covers the requested spelling
variants: letter repetition, look-alike character substitution, case
folding, and noun/verb inflection of the final word. Word boundaries are
anchored on non-alphanumeric characters so that substituted digits still
count as word characters ("k1ll!" matches "kill"; "skill" does not).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..errors import ValidationError
from . import inflect
from .model import VariantFlags

MAX_PHRASE_CHARS = 200
MAX_PATTERN_BYTES = 64 * 1024

_BOUNDARY_BEFORE = r"(?<![A-Za-z0-9])"
_BOUNDARY_AFTER = r"(?![A-Za-z0-9])"
_WORD_SEPARATOR = r"[^A-Za-z0-9]+"


@lru_cache(maxsize=1)
def lookalike_table() -> dict[str, list[str]]:
    data = resources.files("modkit.rules").joinpath("data/lookalikes.json")
    return json.loads(data.read_text(encoding="utf-8"))["substitutions"]


@dataclass(eq=False)
class CompiledPhrase:
    original: str
    pattern: str
    expansions: list[str]
    _regex: re.Pattern = field(init=False, repr=False)

    def __post_init__(self):
        self._regex = re.compile(self.pattern)

    @property
    def regex(self) -> re.Pattern:
        return self._regex

    def search(self, text: str):
        return self._regex.search(text)


def _char_unit(c: str, flags: VariantFlags) -> str:
    if not c.isalpha():
        return re.escape(c)
    alternatives = [c]
    if flags.char_substitution:
        alternatives.extend(lookalike_table().get(c.lower(), []))
    if len(alternatives) == 1:
        unit = re.escape(c)
    else:
        unit = "[" + "".join(re.escape(a) for a in alternatives) + "]"
    if flags.repeated_letters:
        unit += "+"
    return unit


def _word_pattern(word: str, flags: VariantFlags) -> str:
    return "".join(_char_unit(c, flags) for c in word)


def expansions_for(phrase: str, flags: VariantFlags) -> list[str]:
    """Surface forms the pattern alternates over; the phrase comes first.

    Inflection applies to the final word only.
    """
    words = phrase.split()
    head = words[-1]
    heads = [head]
    if flags.noun_forms:
        for form in inflect.noun_plurals(head):
            if form not in heads:
                heads.append(form)
    if flags.verb_forms:
        for form in inflect.verb_forms(head):
            if form not in heads:
                heads.append(form)
    return [" ".join(words[:-1] + [h]) for h in heads]


def compile_phrase(phrase: str, flags: VariantFlags) -> CompiledPhrase:
    trimmed = phrase.strip()
    if not trimmed:
        raise ValidationError("cannot compile an empty phrase")
    if len(trimmed) > MAX_PHRASE_CHARS:
        raise ValidationError(
            f"phrase longer than {MAX_PHRASE_CHARS} characters", details={"phrase": trimmed[:50]}
        )

    expansions = expansions_for(trimmed, flags)
    alternatives = []
    for expansion in expansions:
        words = [_word_pattern(w, flags) for w in expansion.split()]
        alternatives.append(_WORD_SEPARATOR.join(words))

    body = alternatives[0] if len(alternatives) == 1 else "(?:" + "|".join(alternatives) + ")"
    if flags.case_insensitive:
        body = f"(?i:{body})"
    pattern = f"{_BOUNDARY_BEFORE}{body}{_BOUNDARY_AFTER}"

    if len(pattern.encode("utf-8")) > MAX_PATTERN_BYTES:
        raise ValidationError(
            "compiled pattern exceeds the size guard",
            details={"phrase": trimmed[:50], "bytes": len(pattern.encode('utf-8'))},
        )
    return CompiledPhrase(original=trimmed, pattern=pattern, expansions=expansions)


@lru_cache(maxsize=4096)
def compile_phrase_cached(phrase: str, flags: VariantFlags) -> CompiledPhrase:
    return compile_phrase(phrase, flags)
