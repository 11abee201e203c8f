# -*- coding: utf-8 -*-
import logging
from typing import Optional, Sequence

import numpy as np

from vesselforge.errors import FitError, SplineError
from vesselforge.fitting.strategies import strategy_manager
from vesselforge.fitting.types import Constraints, FitConfig, FitResult
from vesselforge.spline.bspline import chord_length_parametrize, collapse_duplicates
from vesselforge.utils.logger import get_logger

MIN_POINTS = 4


def fit_vessel(
    points: Sequence[Sequence[float]],
    config: Optional[FitConfig] = None,
    constraints: Optional[Constraints] = None,
    logger: Optional[logging.Logger] = None,
) -> FitResult:
    """Approximate one vessel's ``(x, y, z, r)`` samples by a :class:`Spline4`.

    Parameters
    ----------
    points : Sequence[Sequence[float]]
        Ordered samples, inlet first.
    config : FitConfig, optional
        Fitting options; defaults apply when omitted.
    constraints : Constraints, optional
        ``(start, end)`` end constraints, each may be None.
    logger : logging.Logger, optional
        Logger instance.

    Raises
    ------
    FitError
        Too few points or a failure inside the strategy; the message names
        the strategy.
    """
    config = config or FitConfig()
    logger = logger or get_logger("fitting")
    data = np.asarray(points, dtype=float)
    if data.ndim != 2 or data.shape[1] != 4:
        raise FitError(f"expected (m, 4) samples, got shape {data.shape}")
    data, _ = collapse_duplicates(data)
    if len(data) < MIN_POINTS:
        raise FitError(f"too few points: {len(data)} after duplicate collapse, need {MIN_POINTS}")
    try:
        t = chord_length_parametrize(data)
    except SplineError as e:
        raise FitError(str(e)) from e

    strategy = strategy_manager.get_strategy(config.strategy, config, logger)
    try:
        return strategy.fit(data, t, constraints)
    except FitError as e:
        raise type(e)(f"{strategy.name}: {e}") from e
    except (np.linalg.LinAlgError, ValueError, SplineError) as e:
        raise FitError(f"{strategy.name}: {e}") from e
