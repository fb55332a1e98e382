"""Gaussian Naive Bayes over embedding vectors.

Variances use the population estimator (divide by n) so that duplicating
every training example leaves the model literally unchanged; smoothing is
1e-9 times the largest pooled per-dimension variance, floored at 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import ModkitError, ValidationError
from ..types import Label
from .embedding import Embedding

SMOOTHING_FACTOR = 1e-9
SMOOTHING_FLOOR = 1e-12


class InsufficientClasses(ModkitError):
    """Training needs at least one example of each class."""

    code = "insufficient_classes"


@dataclass(frozen=True)
class LabeledExample:
    comment_id: str
    label: Label


@dataclass
class NBModel:
    priors: dict[Label, float]
    means: dict[Label, np.ndarray]
    variances: dict[Label, np.ndarray]
    dim: int
    epsilon: float
    trained_on: int
    provider_id: str = ""

    def to_json(self) -> dict:
        return {
            "priors": {k.value: v for k, v in self.priors.items()},
            "means": {k.value: v.tolist() for k, v in self.means.items()},
            "variances": {k.value: v.tolist() for k, v in self.variances.items()},
            "dim": self.dim,
            "epsilon": self.epsilon,
            "trained_on": self.trained_on,
            "provider_id": self.provider_id,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "NBModel":
        return cls(
            priors={Label.parse(k): v for k, v in record["priors"].items()},
            means={
                Label.parse(k): np.asarray(v, dtype=np.float64)
                for k, v in record["means"].items()
            },
            variances={
                Label.parse(k): np.asarray(v, dtype=np.float64)
                for k, v in record["variances"].items()
            },
            dim=record["dim"],
            epsilon=record["epsilon"],
            trained_on=record["trained_on"],
            provider_id=record.get("provider_id", ""),
        )


def train(
    examples: Sequence[LabeledExample], embeddings: Mapping[str, Embedding]
) -> NBModel:
    """Fit priors, means, and smoothed variances from labeled embeddings.

    Examples are processed in sorted comment_id order so training is
    order-independent down to the last float bit.
    """
    if not examples:
        raise InsufficientClasses("no labeled examples")
    ordered = sorted(examples, key=lambda e: e.comment_id)
    by_class: dict[Label, list[np.ndarray]] = {Label.KEEP: [], Label.REMOVE: []}
    for ex in ordered:
        if ex.comment_id not in embeddings:
            raise ValidationError(f"no embedding for comment {ex.comment_id}")
        by_class[ex.label].append(embeddings[ex.comment_id].vector)
    missing = [lab.value for lab, vecs in by_class.items() if not vecs]
    if missing:
        raise InsufficientClasses(
            f"need at least one example of each class; missing {missing}",
            details={"missing_classes": missing},
        )

    all_vectors = np.stack([v for vecs in by_class.values() for v in vecs])
    n_total, dim = all_vectors.shape
    pooled_variance = all_vectors.var(axis=0)
    epsilon = max(SMOOTHING_FACTOR * float(pooled_variance.max()), SMOOTHING_FLOOR)

    priors, means, variances = {}, {}, {}
    for label, vecs in by_class.items():
        stacked = np.stack(vecs)
        priors[label] = stacked.shape[0] / n_total
        means[label] = stacked.mean(axis=0)
        variances[label] = stacked.var(axis=0) + epsilon
    return NBModel(
        priors=priors,
        means=means,
        variances=variances,
        dim=dim,
        epsilon=epsilon,
        trained_on=n_total,
    )


def _log_likelihood(model: NBModel, label: Label, x: np.ndarray) -> float:
    mu = model.means[label]
    var = model.variances[label]
    return float(
        np.sum(-0.5 * np.log(2.0 * np.pi * var) - ((x - mu) ** 2) / (2.0 * var))
    ) + math.log(model.priors[label])


def predict_proba(model: NBModel, embedding: Embedding) -> float:
    """P(Remove | embedding), computed in the log domain."""
    if embedding.dim != model.dim:
        raise ValidationError(
            f"embedding dim {embedding.dim} does not match model dim {model.dim}"
        )
    x = embedding.vector
    log_remove = _log_likelihood(model, Label.REMOVE, x)
    log_keep = _log_likelihood(model, Label.KEEP, x)
    m = max(log_remove, log_keep)
    denom = m + math.log(math.exp(log_remove - m) + math.exp(log_keep - m))
    return math.exp(log_remove - denom)
