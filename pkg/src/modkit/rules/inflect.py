"""Offline inflection of English nouns and verbs.

A bundled lexicon of irregular forms plus regular suffix rules replaces a
POS-tagging pipeline: callers ask explicitly for noun or verb forms, and the
rules stay deterministic and auditable.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

VOWELS = set("aeiou")


@lru_cache(maxsize=1)
def _tables() -> dict:
    data = resources.files("modkit.rules").joinpath("data/inflections.json")
    return json.loads(data.read_text(encoding="utf-8"))


def _match_case(template: str, form: str) -> str:
    """Carry a leading capital from the template onto the generated form."""
    if template[:1].isupper():
        return form[:1].upper() + form[1:]
    return form


def _s_form(word: str, *, verb: bool) -> str:
    lower = word.lower()
    if lower.endswith(("s", "x", "z", "ch", "sh")) or (verb and lower.endswith("o")):
        return word + "es"
    if lower.endswith("y") and len(lower) > 1 and lower[-2] not in VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def _doubles_final(word: str) -> bool:
    # consonant-vowel-consonant ending, final letter not w/x/y
    lower = word.lower()
    if len(lower) < 3:
        return False
    a, b, c = lower[-3], lower[-2], lower[-1]
    return (
        a not in VOWELS
        and b in VOWELS
        and c not in VOWELS
        and c not in "wxy"
        and c.isalpha()
    )


def noun_plurals(word: str) -> list[str]:
    """Plural surface forms of a noun (regular rules plus irregular table)."""
    lower = word.lower()
    irregular = _tables()["nouns"].get(lower)
    if irregular:
        return [_match_case(word, f) for f in irregular]
    return [_match_case(word, _s_form(lower, verb=False))]


def verb_forms(word: str) -> list[str]:
    """Third-person, past, and gerund forms of a verb."""
    lower = word.lower()
    forms = [_s_form(lower, verb=True)]

    irregular = _tables()["verbs"].get(lower)
    if irregular:
        forms.extend(irregular)
    else:
        if lower.endswith("e"):
            past = lower + "d"
        elif lower.endswith("y") and len(lower) > 1 and lower[-2] not in VOWELS:
            past = lower[:-1] + "ied"
        elif _doubles_final(lower):
            past = lower + lower[-1] + "ed"
        else:
            past = lower + "ed"
        forms.append(past)

    if lower.endswith("ie"):
        gerund = lower[:-2] + "ying"
    elif lower.endswith("e") and not lower.endswith("ee"):
        gerund = lower[:-1] + "ing"
    elif _doubles_final(lower):
        gerund = lower + lower[-1] + "ing"
    else:
        gerund = lower + "ing"
    if gerund not in forms:
        forms.append(gerund)

    out = []
    for f in forms:
        cased = _match_case(word, f)
        if cased not in out:
            out.append(cased)
    return out


def lexicon_version() -> int:
    return _tables()["version"]
