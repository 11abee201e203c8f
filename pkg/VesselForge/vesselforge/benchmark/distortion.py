# -*- coding: utf-8 -*-
"""Down-sampling and noise applied to ground-truth vessels."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

import numpy as np

from vesselforge.errors import ConfigError
from vesselforge.spline.bspline import Spline4, arc_length_table
from vesselforge.spline.frames import perpendicular


class NoiseMode(str, Enum):
    RADIUS_ONLY = "radius_only"
    SPATIAL_ONLY = "spatial_only"


@dataclass(frozen=True)
class DistortionSpec:
    """One distortion of a ground truth.

    Only the channel selected by ``mode`` is noisy; the coefficient of the
    other channel must be zero. Standard deviations are the coefficient
    times the local radius.
    """

    target_density: float
    sigma_radius_coeff: float = 0.0
    sigma_spatial_coeff: float = 0.0
    seed: int = 0
    mode: NoiseMode = NoiseMode.RADIUS_ONLY

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "mode", NoiseMode(self.mode))
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if self.sigma_radius_coeff < 0 or self.sigma_spatial_coeff < 0:
            raise ConfigError("noise coefficients must be nonnegative")
        if not self.target_density > 0:
            raise ConfigError("target density must be positive")
        inactive = self.sigma_spatial_coeff if self.mode is NoiseMode.RADIUS_ONLY else self.sigma_radius_coeff
        if inactive != 0:
            raise ConfigError(f"{self.mode.value} distortion needs the other noise coefficient at 0")

    @property
    def coefficient(self) -> float:
        return self.sigma_radius_coeff if self.mode is NoiseMode.RADIUS_ONLY else self.sigma_spatial_coeff

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target_density": self.target_density,
            "sigma_radius_coeff": self.sigma_radius_coeff,
            "sigma_spatial_coeff": self.sigma_spatial_coeff,
            "seed": int(self.seed),
            "mode": self.mode.value,
        }


def sample_parameters(truth: Spline4, density: float) -> np.ndarray:
    """Parameters of points evenly spaced in arc length at ``density`` points per mm."""
    table_u, table_s = arc_length_table(truth)
    count = int(round(table_s[-1] * density))
    if count < 2:
        raise ConfigError(f"density {density:g}/mm leaves {count} point(s) on a {table_s[-1]:.3g} mm vessel")
    return np.interp(np.linspace(0.0, table_s[-1], count), table_s, table_u)


def distort(truth: Spline4, spec: DistortionSpec) -> np.ndarray:
    """Noisy ``(m, 4)`` samples of a ground truth, deterministic in ``spec.seed``.

    Spatial noise moves each point along a random direction normal to the
    tangent and leaves radii exact; radius noise leaves positions exact.
    """
    u = sample_parameters(truth, spec.target_density)
    points = truth(u)
    rng = np.random.default_rng(spec.seed)
    radius = points[:, 3]
    if spec.mode is NoiseMode.RADIUS_ONLY:
        points[:, 3] = radius + rng.normal(0.0, 1.0, len(u)) * spec.sigma_radius_coeff * radius
        return points
    tangents = truth.tangent(u)
    angles = rng.uniform(0.0, 2.0 * np.pi, len(u))
    magnitudes = rng.normal(0.0, 1.0, len(u)) * spec.sigma_spatial_coeff * radius
    for i, t in enumerate(tangents):
        n1 = perpendicular(t)
        n2 = np.cross(t, n1)
        points[i, :3] += magnitudes[i] * (np.cos(angles[i]) * n1 + np.sin(angles[i]) * n2)
    return points
