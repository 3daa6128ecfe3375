"""Weight extraction and consistency metrics for complete judgment matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import JudgmentMatrix
from .errors import BadDimension, NoConvergence

# power iteration parameters
_MAX_ITER = 10_000
_REL_TOL = 1e-12


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    acceptable: bool


def approx_weights(matrix: JudgmentMatrix) -> np.ndarray:
    """Column-normalization estimate: w_i = mean_j (a_ij / sum_r a_rj)."""
    a = matrix.to_array()
    return (a / a.sum(axis=0)).mean(axis=1)


def eigen_weights(matrix: JudgmentMatrix) -> tuple[np.ndarray, float]:
    """Perron weights by power iteration.

    Starts uniform, sum-normalizes each step, stops when successive
    lambda estimates differ by < 1e-12 relative; lambda_max is the mean
    of (A w)_i / w_i at the stopping point.
    """
    a = matrix.to_array()
    h = matrix.h
    w = np.full(h, 1.0 / h)
    lam_prev = np.inf
    for _ in range(_MAX_ITER):
        u = a @ w
        lam = float((u / w).mean())
        if abs(lam - lam_prev) < _REL_TOL * abs(lam):
            return u / u.sum(), lam
        w = u / u.sum()
        lam_prev = lam
    raise NoConvergence(f"power iteration did not settle in {_MAX_ITER} steps")


def consistency_index(lambda_max: float, h: int) -> float:
    """CI = (lambda_max - h) / (h - 1)."""
    if h < 3:
        raise BadDimension(f"consistency index needs h >= 3, got {h}")
    return (lambda_max - h) / (h - 1)


def random_index(h: int) -> float:
    """RI = 1.98 (h - 2) / h."""
    if h < 3:
        raise BadDimension(f"random index needs h >= 3, got {h}")
    return 1.98 * (h - 2) / h


def consistency_report(matrix: JudgmentMatrix) -> ConsistencyReport:
    """Full CI/RI/CR assembly; CR <= 0.1 is acceptable.

    A 2-object matrix is always consistent: reported as lambda_max = h,
    CI = RI = CR = 0, acceptable, without invoking the h >= 3 formulas.
    """
    _, lam = eigen_weights(matrix)
    if matrix.h < 3:
        return ConsistencyReport(lambda_max=lam, ci=0.0, ri=0.0, cr=0.0, acceptable=True)
    ci = consistency_index(lam, matrix.h)
    ri = random_index(matrix.h)
    cr = ci / ri
    return ConsistencyReport(lambda_max=lam, ci=ci, ri=ri, cr=cr, acceptable=cr <= 0.1)
