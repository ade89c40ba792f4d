"""Empirical CDFs, means, and confidence intervals over switch counts.

Switch counts are integers, so CDFs are plain step functions with no
smoothing.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from statistics import NormalDist
from typing import Iterable, Sequence


@dataclass(frozen=True)
class EmpiricalCDF:
    """Right-continuous step CDF over a sorted sample."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("empirical CDF needs at least one sample")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    def evaluate(self, x: float) -> float:
        """Fraction of samples <= x."""
        return bisect_right(self.values, x) / len(self.values)

    def quantile(self, q: float) -> int:
        """Generalized inverse: smallest sample value v with F(v) >= q."""
        if not 0.0 < q <= 1.0:
            raise ValueError(f"quantile level must be in (0, 1], got {q}")
        idx = max(0, math.ceil(q * len(self.values)) - 1)
        return self.values[idx]

    def steps(self) -> list[tuple[int, float]]:
        """(value, F(value)) at each distinct sample value, ascending."""
        out = []
        n = len(self.values)
        for v in sorted(set(self.values)):
            out.append((v, bisect_right(self.values, v) / n))
        return out

    def count_at_most(self, x: float) -> int:
        return bisect_right(self.values, x)

    def count_below(self, x: float) -> int:
        return bisect_left(self.values, x)


def empirical_cdf(samples: Iterable[int]) -> EmpiricalCDF:
    """Build the empirical CDF of integer samples. Errors on empty input."""
    values = tuple(samples)
    if not values:
        raise ValueError("cannot build a CDF from an empty sample")
    return EmpiricalCDF(values)


def mean_ci(samples: Sequence[float], confidence: float = 0.95) -> tuple[float, float]:
    """Sample mean and normal-approximation CI half-width.

    Requires at least two samples; constant samples give half-width 0.
    """
    n = len(samples)
    if n < 2:
        raise ValueError(f"need at least 2 samples for a confidence interval, got {n}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    mean = sum(samples) / n
    var = sum((x - mean) ** 2 for x in samples) / (n - 1)
    z = NormalDist().inv_cdf((1.0 + confidence) / 2.0)
    return mean, z * math.sqrt(var / n)
