"""Paired-difference statistics between two strategies.

A linear mixed-effects model is deliberately out of scope; for a balanced
within-subjects design the mean paired difference with its standard error
carries the same pairwise-contrast information.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Optional

from ..errors import ValidationError


@dataclass
class PairedComparison:
    metric: str
    pair: tuple[str, str]
    estimate: float
    std_err: float
    t_stat: Optional[float]
    n: int
    dropped: int = 0

    def to_json(self) -> dict:
        return {
            "metric": self.metric,
            "pair": list(self.pair),
            "estimate": self.estimate,
            "std_err": self.std_err,
            "t_stat": self.t_stat,
            "n": self.n,
            "dropped": self.dropped,
        }


def paired_compare(
    per_session: Mapping[str, tuple[Optional[float], Optional[float]]],
    *,
    metric: str = "",
    pair: tuple[str, str] = ("A", "B"),
) -> PairedComparison:
    """Mean paired difference (first minus second) with sample-sd standard
    error and the resulting t statistic.

    Sessions missing either value are dropped and counted; fewer than two
    complete pairs is an error. t_stat is None when std_err is zero.
    """
    diffs = []
    dropped = 0
    for _, (a, b) in sorted(per_session.items()):
        if a is None or b is None:
            dropped += 1
            continue
        diffs.append(a - b)
    n = len(diffs)
    if n < 2:
        raise ValidationError(
            f"need at least 2 complete pairs, got {n}", details={"dropped": dropped}
        )
    estimate = statistics.mean(diffs)
    std_err = statistics.stdev(diffs) / math.sqrt(n)
    t_stat = estimate / std_err if std_err > 0 else None
    return PairedComparison(
        metric=metric,
        pair=pair,
        estimate=estimate,
        std_err=std_err,
        t_stat=t_stat,
        n=n,
        dropped=dropped,
    )
