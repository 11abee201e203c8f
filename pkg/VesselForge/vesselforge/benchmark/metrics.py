# -*- coding: utf-8 -*-
"""Matched-curve error metrics between a ground truth and a fit."""

from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np

from vesselforge.spline.bspline import Spline4, curvature
from vesselforge.spline.projector import CurveProjector

MATCH_SAMPLES = 1000
METRIC_NAMES = ("RMSE_spatial", "RMSE_radius", "RMSEder_spatial", "RMSEder_radius", "RMSEcurv", "L_diff")


@dataclass(frozen=True)
class MetricSet:
    RMSE_spatial: float
    RMSE_radius: float
    RMSEder_spatial: float
    RMSEder_radius: float
    RMSEcurv: float
    L_diff: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def unit_speed_derivatives(spline: Spline4, u: np.ndarray):
    """Arc-length derivatives: unit tangent and ``dr/ds``."""
    d1 = spline(u, 1)
    speed = np.linalg.norm(d1[:, :3], axis=1)
    speed = np.where(speed > 1e-14, speed, 1.0)
    return d1[:, :3] / speed[:, None], d1[:, 3] / speed


def _rms(values: np.ndarray) -> float:
    return float(np.sqrt(np.mean(values)))


def one_way(source: Spline4, target: Spline4, samples: int = MATCH_SAMPLES) -> np.ndarray:
    """Five RMSE values of ``source`` sampled uniformly and matched onto ``target``."""
    u = np.linspace(0.0, 1.0, samples)
    v, _ = CurveProjector(target).project(source.position(u))
    a, b = source(u), target(v)
    ta, dra = unit_speed_derivatives(source, u)
    tb, drb = unit_speed_derivatives(target, v)
    return np.array([
        _rms(np.sum((a[:, :3] - b[:, :3]) ** 2, axis=1)),
        _rms((a[:, 3] - b[:, 3]) ** 2),
        _rms(np.sum((ta - tb) ** 2, axis=1)),
        _rms((dra - drb) ** 2),
        _rms((curvature(source, u) - curvature(target, v)) ** 2),
    ])


def matched_metrics(truth: Spline4, fit: Spline4, samples: int = MATCH_SAMPLES) -> MetricSet:
    """Six metrics averaged over both matching directions."""
    values = 0.5 * (one_way(truth, fit, samples) + one_way(fit, truth, samples))
    return MetricSet(*(float(v) for v in values), L_diff=abs(truth.length - fit.length))
