"""Ground-truth scoring: confusion counts and derived metrics.

The positive class is Remove. Degenerate precision/recall (empty
denominator) map to 0 with an explicit flag so time series stay total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from ..errors import ValidationError
from ..types import Label, Prediction


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def to_json(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


@dataclass
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "flags": list(self.flags),
        }


def metrics_from_counts(counts: ConfusionCounts) -> Metrics:
    flags = []
    n = counts.total
    accuracy = (counts.tp + counts.tn) / n if n else 0.0
    if counts.tp + counts.fp == 0:
        precision = 0.0
        flags.append("undefined_precision")
    else:
        precision = counts.tp / (counts.tp + counts.fp)
    if counts.tp + counts.fn == 0:
        recall = 0.0
        flags.append("undefined_recall")
    else:
        recall = counts.tp / (counts.tp + counts.fn)
    if precision + recall == 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return Metrics(
        accuracy=accuracy, precision=precision, recall=recall, f1=f1, flags=tuple(flags)
    )


def _decision(value: Union[Label, Prediction]) -> Label:
    return value.decision if isinstance(value, Prediction) else value


def score(
    predictions: Mapping[str, Union[Label, Prediction]],
    ground_truth: Mapping[str, Label],
) -> tuple[ConfusionCounts, Metrics]:
    """Score predictions against ground truth over the ground-truth ids."""
    missing = sorted(set(ground_truth) - set(predictions))
    if missing:
        raise ValidationError(
            f"{len(missing)} ground-truth ids have no prediction",
            details={"missing_ids": missing},
        )
    tp = fp = fn = tn = 0
    for cid, truth in ground_truth.items():
        predicted = _decision(predictions[cid])
        if predicted is Label.REMOVE and truth is Label.REMOVE:
            tp += 1
        elif predicted is Label.REMOVE and truth is Label.KEEP:
            fp += 1
        elif predicted is Label.KEEP and truth is Label.REMOVE:
            fn += 1
        else:
            tn += 1
    counts = ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)
    return counts, metrics_from_counts(counts)


@dataclass
class MetricsSnapshot:
    """Classifier state and scores captured at an active-time boundary."""

    session_id: str
    strategy: str
    t_active_seconds: int
    wall_ts: float
    counts: ConfusionCounts
    metrics: Metrics
    classifier_state: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "strategy": self.strategy,
            "t_active_seconds": self.t_active_seconds,
            "wall_ts": self.wall_ts,
            "counts": self.counts.to_json(),
            "metrics": self.metrics.to_json(),
            "classifier_state": self.classifier_state,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "MetricsSnapshot":
        return cls(
            session_id=record["session_id"],
            strategy=record["strategy"],
            t_active_seconds=record["t_active_seconds"],
            wall_ts=record["wall_ts"],
            counts=ConfusionCounts(**record["counts"]),
            metrics=Metrics(
                accuracy=record["metrics"]["accuracy"],
                precision=record["metrics"]["precision"],
                recall=record["metrics"]["recall"],
                f1=record["metrics"]["f1"],
                flags=tuple(record["metrics"].get("flags", [])),
            ),
            classifier_state=record.get("classifier_state", {}),
        )
