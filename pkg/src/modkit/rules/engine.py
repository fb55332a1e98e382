"""Rule evaluation: condition matching, AND/exception semantics, and
rule-set classification with per-phrase explanations."""

from __future__ import annotations

from typing import Optional, Sequence

from ..types import Label, Prediction
from .compile import compile_phrase_cached
from .model import Condition, PhraseHit, Rule, RuleMatch


def match_condition(cond: Condition, text: str) -> Optional[PhraseHit]:
    """First matching phrase in text-position order.

    Position ties are broken by phrase list order.
    """
    best: Optional[tuple[int, int, PhraseHit]] = None
    for idx, phrase in enumerate(cond.phrases):
        compiled = compile_phrase_cached(phrase, cond.flags)
        m = compiled.search(text)
        if m is None:
            continue
        key = (m.start(), idx)
        if best is None or key < best[:2]:
            best = (m.start(), idx, PhraseHit(phrase=phrase, start=m.start(), end=m.end()))
    return best[2] if best else None


def match_rule(rule: Rule, text: str) -> Optional[RuleMatch]:
    """Match iff every include condition hits and the exception does not."""
    triggered = []
    for idx, cond in enumerate(rule.includes):
        hit = match_condition(cond, text)
        if hit is None:
            return None
        triggered.append((idx, hit))
    if rule.exclude is not None and match_condition(rule.exclude, text) is not None:
        return None
    return RuleMatch(rule_name=rule.name, triggered=tuple(triggered))


def classify(rules: Sequence[Rule], text: str) -> Prediction:
    """Remove iff any rule matches; the first matching rule explains it."""
    for rule in rules:
        match = match_rule(rule, text)
        if match is not None:
            return Prediction(decision=Label.REMOVE, explanation=match.to_json())
    return Prediction(decision=Label.KEEP, explanation={})
