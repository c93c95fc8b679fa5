from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence


def global_error(x: float, xhat: float) -> float:
    """``|x - xhat| / (x + 1)`` for an exact count ``x >= 0``."""
    if x < 0:
        raise ValueError(f"exact count must be non-negative, got {x}")
    return abs(x - xhat) / (x + 1)


def local_error(exact: Mapping[int, float], est: Mapping[int, float], nodes: Iterable[int]) -> float:
    """Mean of ``|x_u - xhat_u| / (x_u + 1)`` over ``nodes``; absent entries count as 0."""
    total = 0.0
    n = 0
    for u in nodes:
        x = exact.get(u, 0)
        total += abs(x - est.get(u, 0.0)) / (x + 1)
        n += 1
    if n == 0:
        raise ValueError("local error needs a non-empty node set")
    return total / n


@dataclass(frozen=True)
class TrialStats:
    n: int
    mean: float
    variance: float
    std_error: float

    def to_dict(self) -> dict:
        return asdict(self)


def trial_statistics(values: Sequence[float]) -> TrialStats:
    """Mean, unbiased variance and standard error of the mean."""
    n = len(values)
    if n == 0:
        raise ValueError("trial_statistics needs at least one value")
    mean = math.fsum(values) / n
    if n < 2:
        return TrialStats(n, mean, 0.0, 0.0)
    var = math.fsum((x - mean) ** 2 for x in values) / (n - 1)
    return TrialStats(n, mean, var, math.sqrt(var / n))
