# -*- coding: utf-8 -*-
"""Control point count selection."""

import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from vesselforge.errors import SingularSystemError
from vesselforge.fitting.criteria import control_count_aic
from vesselforge.fitting.penalty import PenalizedSystem

MIN_CONTROL_POINTS = 4


def split_rmse(residuals: np.ndarray) -> Sequence[float]:
    """RMSE of the spatial block (first three columns) and of the radius column.

    A one-column residual is a radius residual, three columns are spatial.
    """
    residuals = np.asarray(residuals, dtype=float)
    if residuals.ndim == 1:
        residuals = residuals[:, None]
    if residuals.shape[1] == 1:
        return (0.0, float(np.sqrt(np.mean(residuals[:, 0] ** 2))))
    spatial = float(np.sqrt(np.mean(np.sum(residuals[:, :3] ** 2, axis=1))))
    radius = float(np.sqrt(np.mean(residuals[:, 3] ** 2))) if residuals.shape[1] > 3 else 0.0
    return spatial, radius


def count_limit(m: int, max_control_points: int) -> int:
    return max(MIN_CONTROL_POINTS, min(m, max_control_points))


def smallest_count(accept: Callable[[int], bool], lo: int, hi: int) -> Optional[int]:
    """Smallest ``n`` in ``[lo, hi]`` with ``accept(n)``.

    Assumes acceptance is monotone in ``n``; doubling brackets the answer
    and bisection narrows it.
    """
    if lo > hi:
        return None
    if accept(lo):
        return lo
    failed, trial = lo, lo
    while True:
        trial = min(hi, max(trial * 2, trial + 1))
        if accept(trial):
            break
        failed = trial
        if trial == hi:
            return None
    passed = trial
    while passed - failed > 1:
        middle = (failed + passed) // 2
        if accept(middle):
            passed = middle
        else:
            failed = middle
    return passed


def rmse_control_count(
    data: np.ndarray,
    t: np.ndarray,
    spatial_threshold: float,
    radius_threshold: float,
    max_control_points: int,
) -> int:
    """Smallest count whose non-penalized fit meets both RMSE thresholds.

    When no count passes, the largest count with a nonsingular system is
    returned.
    """
    m = len(data)
    limit = count_limit(m, max_control_points)

    def residuals(n: int) -> Optional[np.ndarray]:
        system = PenalizedSystem(data, t, n)
        try:
            return system.residuals(system.coefficients(0.0))
        except SingularSystemError:
            return None

    def accept(n: int) -> bool:
        r = residuals(n)
        if r is None:
            return False
        spatial, radius = split_rmse(r)
        return spatial < spatial_threshold and radius < radius_threshold

    found = smallest_count(accept, MIN_CONTROL_POINTS, limit)
    if found is not None:
        return found
    for n in range(limit, MIN_CONTROL_POINTS, -1):
        if residuals(n) is not None:
            return n
    return MIN_CONTROL_POINTS


def aic_control_count(data: np.ndarray, t: np.ndarray, max_control_points: int) -> int:
    """Count minimizing ``m log(SSE) + 8 (n + p)`` over the admissible range.

    A geometric coarse scan is followed by an exhaustive scan between the
    neighbours of the coarse minimum. Ties go to the smaller count.
    """
    m = len(data)
    limit = max(MIN_CONTROL_POINTS, min(m - 1, max_control_points))
    cache = {}

    def value(n: int) -> float:
        if n not in cache:
            system = PenalizedSystem(data, t, n)
            try:
                sse = float(np.sum(system.residuals(system.coefficients(0.0)) ** 2))
                cache[n] = float(control_count_aic(sse, m, n))
            except SingularSystemError:
                cache[n] = math.inf
        return cache[n]

    coarse: List[int] = sorted(
        set(np.unique(np.round(np.geomspace(MIN_CONTROL_POINTS, limit, 32)).astype(int)).tolist())
    )
    values = [value(n) for n in coarse]
    best = int(np.argmin(values))
    lo = coarse[max(best - 1, 0)]
    hi = coarse[min(best + 1, len(coarse) - 1)]
    fine = list(range(lo, hi + 1))
    fine_values = [value(n) for n in fine]
    return fine[int(np.argmin(fine_values))]
