# -*- coding: utf-8 -*-
"""Penalized strategies with criterion-selected smoothing."""

from typing import Optional

import numpy as np

from vesselforge.fitting.control_count import rmse_control_count
from vesselforge.fitting.criteria import select_lambda
from vesselforge.fitting.penalty import PenalizedSystem, solve_constrained, spatial_constraints
from vesselforge.fitting.strategies.basic_strategy import BasicStrategy
from vesselforge.fitting.types import Constraints, FitResult
from vesselforge.spline.bspline import SplineD, greville_abscissae


class GPAICStrategy(BasicStrategy):
    """One control count and one smoothing parameter for all four coordinates."""

    name = "GP_AIC"

    def fit(self, data: np.ndarray, t: np.ndarray, constraints: Optional[Constraints] = None) -> FitResult:
        n = rmse_control_count(
            data, t,
            self.config.rmse_threshold_spatial,
            self.config.rmse_threshold_radius,
            self.config.max_control_points,
        )
        system = PenalizedSystem(data, t, n)
        lam, _, trace = select_lambda(system, self.config.criterion, self.config.lambda_grid, self.config.refine_lambda)
        control = self.solve(system, lam, constraints)
        return self.result(control, data, t, lam, lam, trace)


class SRPAICStrategy(BasicStrategy):
    """Spatial and radius data fitted in two independent penalized steps.

    Step one fits x, y, z. Step two fits the radius against the same
    parametrization with its own control count and smoothing parameter;
    that curve is sampled at the Greville abscissae of the spatial basis to
    give the fourth control coordinate.
    """

    name = "SRP_AIC"

    def fit(self, data: np.ndarray, t: np.ndarray, constraints: Optional[Constraints] = None) -> FitResult:
        config = self.config
        spatial_data, radius_data = data[:, :3], data[:, 3:4]

        n_s = rmse_control_count(spatial_data, t, config.rmse_threshold_spatial, np.inf, config.max_control_points)
        spatial_system = PenalizedSystem(spatial_data, t, n_s)
        lam_s, _, trace = select_lambda(spatial_system, config.criterion, config.lambda_grid, config.refine_lambda)

        alpha = beta = None
        if self.is_constrained(constraints):
            spatial_control, alpha, beta = solve_constrained(spatial_system, lam_s, spatial_constraints(constraints))
        else:
            spatial_control = spatial_system.coefficients(lam_s)

        n_r = rmse_control_count(radius_data, t, np.inf, config.rmse_threshold_radius, config.max_control_points)
        radius_system = PenalizedSystem(radius_data, t, n_r)
        lam_r, _, _ = select_lambda(radius_system, config.criterion, config.lambda_grid, config.refine_lambda)
        radius_curve = SplineD(radius_system.coefficients(lam_r))
        radius_control = radius_curve(greville_abscissae(n_s))[:, 0]

        if constraints is not None:
            start, end = constraints
            if start is not None:
                radius_control[0] = start.point[3]
                radius_control[1] = start.point[3] + alpha / np.linalg.norm(start.tangent[:3]) * start.tangent[3]
            if end is not None:
                radius_control[-1] = end.point[3]
                radius_control[-2] = end.point[3] - beta / np.linalg.norm(end.tangent[:3]) * end.tangent[3]

        control = np.column_stack([spatial_control, radius_control])
        return self.result(control, data, t, lam_s, lam_r, trace, n_control_radius=n_r)
