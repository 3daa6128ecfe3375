"""Multi-expert accumulation: mean weights and Student-t confidence intervals."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import BadValue, DimensionMismatch, MissingVariance, Unreachable

_K_CAP = 10_000


@dataclass(frozen=True)
class StudyAggregate:
    k: int
    per_expert: tuple
    mean_w: np.ndarray
    half_width: np.ndarray | None  # None when k = 1
    level: float
    per_expert_cr: tuple[float, ...]


def half_width(s: float, k: int, level: float) -> float:
    """Two-sided t half-interval t_{(1+level)/2, k-1} * s / sqrt(k)."""
    return float(stats.t.ppf((1.0 + level) / 2.0, k - 1)) * s / math.sqrt(k)


def aggregate(weights, crs, level: float = 0.95) -> StudyAggregate:
    """Per-coefficient mean (renormalized to sum 1) with t half-intervals.

    A single expert yields no variance estimate: half_width is None and a
    MissingVariance warning is signaled instead of failing.
    """
    if not 0.0 < level < 1.0:
        raise BadValue(f"confidence level must be in (0,1), got {level}")
    if len(weights) < 1:
        raise DimensionMismatch("need at least one weight vector")
    if len(crs) != len(weights):
        raise DimensionMismatch(f"{len(weights)} vectors but {len(crs)} CR values")
    h = len(weights[0])
    for w in weights:
        if len(w) != h:
            raise DimensionMismatch(f"mixed vector lengths: {len(w)} vs {h}")
    stack = np.array([np.asarray(w, dtype=float) for w in weights])
    k = stack.shape[0]
    mean_w = stack.mean(axis=0)
    mean_w = mean_w / mean_w.sum()
    if k == 1:
        warnings.warn("single expert: no variance estimate", MissingVariance)
        hw = None
    else:
        s = stack.std(axis=0, ddof=1)
        t = float(stats.t.ppf((1.0 + level) / 2.0, k - 1))
        hw = t * s / math.sqrt(k)
    return StudyAggregate(
        k=k,
        per_expert=tuple(stack),
        mean_w=mean_w,
        half_width=hw,
        level=level,
        per_expert_cr=tuple(float(c) for c in crs),
    )


def experts_needed(observed_s: float, target_half_width: float, level: float = 0.95) -> int:
    """Smallest k >= 2 whose half-interval meets the target; capped at 10000."""
    if observed_s <= 0:
        raise BadValue(f"observed spread must be positive, got {observed_s}")
    if target_half_width <= 0:
        raise BadValue(f"target half-width must be positive, got {target_half_width}")
    if not 0.0 < level < 1.0:
        raise BadValue(f"confidence level must be in (0,1), got {level}")
    for k in range(2, _K_CAP + 1):
        if half_width(observed_s, k, level) <= target_half_width:
            return k
    raise Unreachable(f"no k <= {_K_CAP} reaches half-width {target_half_width}")
