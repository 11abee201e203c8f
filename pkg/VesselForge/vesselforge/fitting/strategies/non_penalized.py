# -*- coding: utf-8 -*-
"""Strategies without smoothing penalty."""

from typing import Optional

import numpy as np

from vesselforge.fitting.control_count import aic_control_count, rmse_control_count
from vesselforge.fitting.penalty import PenalizedSystem
from vesselforge.fitting.strategies.basic_strategy import BasicStrategy
from vesselforge.fitting.types import Constraints, FitResult


class GNPStrategy(BasicStrategy):
    """Smallest control count meeting both RMSE thresholds, no penalty."""

    name = "GNP"

    def fit(self, data: np.ndarray, t: np.ndarray, constraints: Optional[Constraints] = None) -> FitResult:
        n = rmse_control_count(
            data, t,
            self.config.rmse_threshold_spatial,
            self.config.rmse_threshold_radius,
            self.config.max_control_points,
        )
        control = self.solve(PenalizedSystem(data, t, n), 0.0, constraints)
        return self.result(control, data, t, 0.0, 0.0)


class GNPAICStrategy(BasicStrategy):
    """Control count by the control-count AIC, no penalty."""

    name = "GNP_AIC"

    def fit(self, data: np.ndarray, t: np.ndarray, constraints: Optional[Constraints] = None) -> FitResult:
        n = aic_control_count(data, t, self.config.max_control_points)
        control = self.solve(PenalizedSystem(data, t, n), 0.0, constraints)
        return self.result(control, data, t, 0.0, 0.0)
