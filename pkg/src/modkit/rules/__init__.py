from .compile import CompiledPhrase, compile_phrase, compile_phrase_cached, expansions_for, lookalike_table
from .engine import classify, match_condition, match_rule
from .model import (
    Condition,
    ConditionKind,
    PhraseHit,
    Rule,
    RuleMatch,
    VariantFlags,
    rules_from_json,
    rules_to_json,
)
from .suggest import suggest_similar_phrases

__all__ = [
    "CompiledPhrase",
    "Condition",
    "ConditionKind",
    "PhraseHit",
    "Rule",
    "RuleMatch",
    "VariantFlags",
    "classify",
    "compile_phrase",
    "compile_phrase_cached",
    "expansions_for",
    "lookalike_table",
    "match_condition",
    "match_rule",
    "rules_from_json",
    "rules_to_json",
    "suggest_similar_phrases",
]
