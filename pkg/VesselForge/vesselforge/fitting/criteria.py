# -*- coding: utf-8 -*-
"""Information criteria for smoothing parameter and control count selection."""

import math
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from vesselforge.errors import FitError, SingularSystemError
from vesselforge.fitting.penalty import PenalizedSystem
from vesselforge.fitting.types import Criterion

CriterionKind = Union[Criterion, str]


class CriterionScore(float):
    """A criterion value that also records whether it hit the SSE = 0 sentinel."""

    degenerate: bool

    def __new__(cls, value: float, degenerate: bool = False) -> "CriterionScore":
        obj = super().__new__(cls, value)
        obj.degenerate = degenerate
        return obj


def control_count_aic(sse: float, m: int, n: int, degree: int = 3) -> CriterionScore:
    """``m log(SSE) + 8 (n + p)``, used to rank control point counts."""
    if sse <= 0:
        return CriterionScore(-math.inf, True)
    return CriterionScore(m * math.log(sse) + 8 * (n + degree))


def score(
    kind: CriterionKind,
    sse: float,
    trace: float,
    m: int,
    hat_diagonal: Optional[np.ndarray] = None,
    residuals: Optional[np.ndarray] = None,
) -> CriterionScore:
    """Evaluate one smoothing criterion from fit statistics.

    ``CV`` needs the residuals and the hat diagonal, the others only SSE and
    ``tr(H)``.
    """
    kind = Criterion(kind)
    if kind is Criterion.CV:
        if hat_diagonal is None or residuals is None:
            raise FitError("CV needs residuals and the hat-matrix diagonal")
        leverage = 1.0 - hat_diagonal
        if np.any(leverage <= 1e-12):
            return CriterionScore(math.inf)
        squared = np.sum(residuals.reshape(m, -1) ** 2, axis=1)
        return CriterionScore(float(np.mean(squared / leverage**2)))
    if kind is Criterion.GCV:
        dof = m - trace
        if dof <= 0:
            return CriterionScore(math.inf)
        return CriterionScore(m * sse / dof**2)
    if sse <= 0:
        return CriterionScore(-math.inf, True)
    base = m * math.log(sse / m)
    if kind is Criterion.AIC:
        return CriterionScore(base + 2.0 * trace)
    if kind is Criterion.BIC:
        return CriterionScore(base + math.log(m) * trace)
    denominator = m - trace - 1.0
    if denominator <= 0:
        return CriterionScore(math.inf)
    return CriterionScore(base + 2.0 * trace + 2.0 * trace * (trace + 1.0) / denominator)


def system_score(system: PenalizedSystem, kind: CriterionKind, lam: float) -> CriterionScore:
    control = system.coefficients(lam)
    residuals = system.residuals(control)
    sse = float(np.sum(residuals**2))
    kind = Criterion(kind)
    hat = system.hat_diagonal(lam) if kind is Criterion.CV else None
    return score(kind, sse, system.trace(lam), system.m, hat, residuals)


def criterion_value(
    kind: CriterionKind,
    data: np.ndarray,
    t: np.ndarray,
    n: int,
    lam: float,
) -> CriterionScore:
    """Criterion of the unconstrained penalized fit of ``data`` at ``lam``.

    The result is a float; ``result.degenerate`` is True when the fit is
    exact and the logarithm of SSE is undefined (value ``-inf``).
    """
    return system_score(PenalizedSystem(data, t, n), kind, lam)


def select_lambda(
    system: PenalizedSystem,
    kind: CriterionKind,
    grid: Sequence[float],
    refine: bool = True,
) -> Tuple[float, CriterionScore, List[Tuple[float, float]]]:
    """Pick ``lam`` minimizing the criterion over ``grid``.

    The grid is scanned in order and the first minimum wins. With
    ``refine`` a bounded scalar search on ``log10(lam)`` runs between the
    grid neighbours of the minimum and replaces it only when strictly
    better.

    Returns
    -------
    Tuple[float, CriterionScore, List[Tuple[float, float]]]
        Selected ``lam``, its score, and the ``(lam, value)`` trace.
    """
    grid = list(grid)
    if not grid:
        raise FitError("empty lambda grid")
    trace: List[Tuple[float, float]] = []
    scores = []
    for lam in grid:
        try:
            value = system_score(system, kind, lam)
        except SingularSystemError:
            value = CriterionScore(math.inf)
        scores.append(value)
        trace.append((float(lam), float(value)))
    best = int(np.argmin(np.array(scores, dtype=float)))
    if not np.isfinite(float(scores[best])) and not scores[best].degenerate:
        raise SingularSystemError("no lambda on the grid gives a solvable system")
    best_lam, best_score = float(grid[best]), scores[best]
    if not refine or best_score.degenerate or len(grid) < 2:
        return best_lam, best_score, trace

    lo = math.log10(grid[max(best - 1, 0)])
    hi = math.log10(grid[min(best + 1, len(grid) - 1)])
    objective: Callable[[float], float] = lambda x: float(system_score(system, kind, 10.0**x))
    result = minimize_scalar(objective, bounds=(lo, hi), method="bounded", options={"xatol": 1e-3})
    if result.success and result.fun < float(best_score):
        refined = float(10.0 ** result.x)
        refined_score = system_score(system, kind, refined)
        trace.append((refined, float(refined_score)))
        return refined, refined_score, trace
    return best_lam, best_score, trace
