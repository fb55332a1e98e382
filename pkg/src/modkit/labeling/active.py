"""Active learning batch selection: uncertainty sampling plus a seeded
bootstrap batch for the round before any model exists."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import ValidationError
from .embedding import Embedding
from .naive_bayes import NBModel, predict_proba


@dataclass(frozen=True)
class ActiveBatch:
    comment_ids: tuple[str, ...]
    batch_size: int

    def to_json(self) -> dict:
        return {"comment_ids": list(self.comment_ids), "batch_size": self.batch_size}


def uncertainty_sample(
    model: NBModel,
    pool: Sequence[str],
    embeddings: Mapping[str, Embedding],
    k: int,
) -> ActiveBatch:
    """The k pool items whose P(Remove) sits closest to 0.5.

    Ties break on ascending comment id, so the result is stable.
    """
    if k <= 0:
        raise ValidationError("batch size k must be positive")
    scored = []
    for cid in pool:
        p = predict_proba(model, embeddings[cid])
        scored.append((abs(p - 0.5), cid))
    scored.sort()
    return ActiveBatch(
        comment_ids=tuple(cid for _, cid in scored[: min(k, len(scored))]),
        batch_size=k,
    )


def bootstrap_batch(pool: Sequence[str], k: int, seed: int) -> ActiveBatch:
    """Uniform seeded sample for the first round, before any model exists."""
    if k <= 0:
        raise ValidationError("batch size k must be positive")
    digest = hashlib.sha256(f"{seed}:bootstrap".encode()).digest()
    rng = random.Random(int.from_bytes(digest[:8], "big"))
    ordered = sorted(pool)
    take = min(k, len(ordered))
    return ActiveBatch(comment_ids=tuple(rng.sample(ordered, take)), batch_size=k)
