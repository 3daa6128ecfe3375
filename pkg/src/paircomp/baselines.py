"""Binary-comparison baselines: C-frequency ranking and Thurstone scaling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import DegenerateIntensities, DimensionMismatch, MalformedMatrix

_ALLOWED = (0.0, 0.5, 1.0)


class BinaryComparisonMatrix:
    """h x h matrix over {0, 0.5, 1}; diagonal unset (nan).

    b_ij = 1 when object i is preferred over j (then b_ji = 0); a tie
    scores 0.5 for both.  Every off-diagonal pair must satisfy
    b_ij + b_ji = 1.
    """

    def __init__(self, b, labels: list[str] | None = None):
        b = np.asarray(b, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise MalformedMatrix(f"need a square array, got shape {b.shape}")
        self.h = b.shape[0]
        self.b = b.copy()
        np.fill_diagonal(self.b, np.nan)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(1, self.h + 1)]
        if len(self.labels) != self.h:
            raise MalformedMatrix(f"expected {self.h} labels, got {len(self.labels)}")
        self.validate()

    def validate(self) -> None:
        for i in range(self.h):
            for j in range(self.h):
                if i == j:
                    continue
                v, u = self.b[i, j], self.b[j, i]
                if v not in _ALLOWED:
                    raise MalformedMatrix(f"b[{i + 1},{j + 1}] = {v} not in {{0, 0.5, 1}}")
                if v + u != 1.0:
                    raise MalformedMatrix(
                        f"asymmetry violated at ({i + 1},{j + 1}): {v} vs {u}"
                    )


def binary_from_scores(scores, labels=None) -> BinaryComparisonMatrix:
    """Build a binary matrix from per-object scores (higher wins, equal ties)."""
    scores = np.asarray(scores, dtype=float)
    h = scores.size
    b = np.where(scores[:, None] > scores[None, :], 1.0,
                 np.where(scores[:, None] < scores[None, :], 0.0, 0.5))
    return BinaryComparisonMatrix(b, labels)


@dataclass(frozen=True)
class CFrequencyResult:
    c: np.ndarray  # strict-win counts per object
    ranking: tuple[int, ...]  # 1-based object ids, descending c, ties by id


@dataclass(frozen=True)
class PreferenceIntensities:
    k: int
    f: np.ndarray
    p: np.ndarray


def c_frequencies(b: BinaryComparisonMatrix) -> CFrequencyResult:
    """Strict-win counts c_i = #{j : b_ij = 1} and the induced ranking."""
    b.validate()
    c = np.nansum(b.b == 1.0, axis=1).astype(int)
    order = sorted(range(1, b.h + 1), key=lambda i: (-c[i - 1], i))
    return CFrequencyResult(c=c, ranking=tuple(order))


def preference_intensities(matrices: list[BinaryComparisonMatrix]) -> PreferenceIntensities:
    """Accumulate k experts: f_ij = sum of b_ij (ties add 0.5), p_ij = f_ij / k."""
    if not matrices:
        raise DimensionMismatch("need at least one matrix")
    h = matrices[0].h
    for m in matrices:
        if m.h != h:
            raise DimensionMismatch(f"mixed dimensions: {m.h} vs {h}")
    f = np.zeros((h, h))
    for m in matrices:
        f += np.nan_to_num(m.b)
    np.fill_diagonal(f, np.nan)
    k = len(matrices)
    return PreferenceIntensities(k=k, f=f, p=f / k)


def thurstone_scale(p: PreferenceIntensities, clamp: bool = True) -> np.ndarray:
    """Case-V style scores s_i = mean_{j != i} of the normal quantile of p_ij.

    Intensities are clamped to [1/(2k), 1 - 1/(2k)] by default so that
    unanimous preferences stay finite; with clamping disabled, degenerate
    intensities (p_ij of 0 or 1) are rejected.  Scores are shifted so the
    minimum is 0.
    """
    q = p.p.copy()
    off = ~np.eye(p.f.shape[0], dtype=bool)
    if clamp:
        lo = 1.0 / (2 * p.k)
        q[off] = np.clip(q[off], lo, 1.0 - lo)
    elif np.any((q[off] <= 0.0) | (q[off] >= 1.0)):
        raise DegenerateIntensities(
            "intensities outside (0, 1) with clamping disabled"
        )
    z = ndtri(q)
    s = np.nanmean(z, axis=1)
    return s - s.min()
