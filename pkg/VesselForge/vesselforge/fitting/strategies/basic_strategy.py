# -*- coding: utf-8 -*-
import logging
from typing import Optional

import numpy as np

from vesselforge.fitting.control_count import split_rmse
from vesselforge.fitting.penalty import solve_constrained, PenalizedSystem
from vesselforge.fitting.types import Constraints, FitConfig, FitResult
from vesselforge.spline.bspline import Spline4, design_matrix
from vesselforge.utils.logger import get_logger


class BasicStrategy:
    """Base class of the approximation strategies.

    A strategy turns ``(m, 4)`` data with its parametrization into a
    :class:`FitResult`. Subclasses set ``name`` and implement :meth:`fit`.

    Attributes
    ----------
    name : str
        Strategy name as used in configuration files.
    config : FitConfig
        Fitting options.
    logger : logging.Logger
        Logger instance.
    """

    name = ""

    def __init__(self, config: FitConfig, logger: Optional[logging.Logger] = None) -> None:
        self.config = config
        self.logger = logger or get_logger("fitting")

    def fit(self, data: np.ndarray, t: np.ndarray, constraints: Optional[Constraints] = None) -> FitResult:
        raise NotImplementedError("strategies must implement fit")

    @staticmethod
    def is_constrained(constraints: Optional[Constraints]) -> bool:
        return constraints is not None and any(c is not None for c in constraints)

    def solve(self, system: PenalizedSystem, lam: float, constraints: Optional[Constraints]) -> np.ndarray:
        if self.is_constrained(constraints):
            control, _, _ = solve_constrained(system, lam, constraints)  # type: ignore[arg-type]
            return control
        return system.coefficients(lam)

    def result(
        self,
        control: np.ndarray,
        data: np.ndarray,
        t: np.ndarray,
        lambda_spatial: float,
        lambda_radius: float,
        trace=None,
        n_control_radius: Optional[int] = None,
    ) -> FitResult:
        spline = Spline4(control)
        residuals = data - design_matrix(t, len(control)) @ spline.control_points
        rmse_spatial, rmse_radius = split_rmse(residuals)
        result = FitResult(
            spline=spline,
            lambda_spatial=float(lambda_spatial),
            lambda_radius=float(lambda_radius),
            n_control=len(control),
            sse=float(np.sum(residuals**2)),
            criterion_trace=list(trace or []),
            strategy=self.name,
            n_control_radius=n_control_radius,
            rmse_spatial=rmse_spatial,
            rmse_radius=rmse_radius,
        )
        self.logger.debug(
            "%s: n=%d lambda_s=%g lambda_r=%g rmse=%.3g/%.3g",
            self.name, result.n_control, result.lambda_spatial, result.lambda_radius,
            rmse_spatial, rmse_radius,
        )
        return result
