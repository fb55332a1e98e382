"""Rule data model: phrase conditions with spelling-variant flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence

from ..errors import ValidationError

MAX_INCLUDE_CONDITIONS = 2
MAX_EXCLUDE_CONDITIONS = 1


@dataclass(frozen=True)
class VariantFlags:
    repeated_letters: bool = False
    case_insensitive: bool = False
    char_substitution: bool = False
    noun_forms: bool = False
    verb_forms: bool = False

    @classmethod
    def all(cls) -> "VariantFlags":
        """The UI's single "detect spelling variants" toggle sets all five."""
        return cls(True, True, True, True, True)

    @classmethod
    def none(cls) -> "VariantFlags":
        return cls()

    def to_json(self) -> dict:
        return {
            "repeated_letters": self.repeated_letters,
            "case_insensitive": self.case_insensitive,
            "char_substitution": self.char_substitution,
            "noun_forms": self.noun_forms,
            "verb_forms": self.verb_forms,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "VariantFlags":
        return cls(
            repeated_letters=bool(record.get("repeated_letters", False)),
            case_insensitive=bool(record.get("case_insensitive", False)),
            char_substitution=bool(record.get("char_substitution", False)),
            noun_forms=bool(record.get("noun_forms", False)),
            verb_forms=bool(record.get("verb_forms", False)),
        )


class ConditionKind(str, Enum):
    INCLUDE = "include"
    EXCLUDE = "exclude"


@dataclass(frozen=True)
class Condition:
    kind: ConditionKind
    phrases: tuple[str, ...]
    flags: VariantFlags = field(default_factory=VariantFlags)

    def __post_init__(self):
        trimmed = tuple(p.strip() for p in self.phrases)
        if not trimmed or any(not p for p in trimmed):
            raise ValidationError("condition phrases must be non-empty")
        object.__setattr__(self, "phrases", trimmed)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "phrases": list(self.phrases),
            "flags": self.flags.to_json(),
        }

    @classmethod
    def from_json(cls, record: Mapping, kind: Optional[ConditionKind] = None) -> "Condition":
        return cls(
            kind=kind or ConditionKind(record.get("kind", "include")),
            phrases=tuple(record["phrases"]),
            flags=VariantFlags.from_json(record.get("flags", {})),
        )


@dataclass(frozen=True)
class Rule:
    """Up to two ANDed include conditions with one optional exception."""

    name: str
    includes: tuple[Condition, ...]
    exclude: Optional[Condition] = None

    def __post_init__(self):
        if not (1 <= len(self.includes) <= MAX_INCLUDE_CONDITIONS):
            raise ValidationError(
                f"a rule takes 1 to {MAX_INCLUDE_CONDITIONS} include conditions"
            )
        if any(c.kind is not ConditionKind.INCLUDE for c in self.includes):
            raise ValidationError("include conditions must have kind 'include'")
        if self.exclude is not None and self.exclude.kind is not ConditionKind.EXCLUDE:
            raise ValidationError("the exception must have kind 'exclude'")

    def to_json(self) -> dict:
        record = {
            "name": self.name,
            "includes": [c.to_json() for c in self.includes],
        }
        if self.exclude is not None:
            record["exclude"] = self.exclude.to_json()
        return record

    @classmethod
    def from_json(cls, record: Mapping) -> "Rule":
        exclude = record.get("exclude")
        return cls(
            name=record["name"],
            includes=tuple(
                Condition.from_json(c, ConditionKind.INCLUDE)
                for c in record["includes"]
            ),
            exclude=Condition.from_json(exclude, ConditionKind.EXCLUDE)
            if exclude
            else None,
        )


@dataclass(frozen=True)
class PhraseHit:
    """A phrase occurrence: [start, end) character offsets into the text."""

    phrase: str
    start: int
    end: int

    def to_json(self) -> dict:
        return {"phrase": self.phrase, "start": self.start, "end": self.end}


@dataclass(frozen=True)
class RuleMatch:
    rule_name: str
    triggered: tuple[tuple[int, PhraseHit], ...]  # (include condition index, hit)

    def to_json(self) -> dict:
        return {
            "rule": self.rule_name,
            "triggered": [
                {"condition": idx, **hit.to_json()} for idx, hit in self.triggered
            ],
        }


def rules_to_json(rules: Sequence[Rule]) -> dict:
    return {"rules": [r.to_json() for r in rules]}


def rules_from_json(record: Mapping) -> list[Rule]:
    return [Rule.from_json(r) for r in record["rules"]]
