# -*- coding: utf-8 -*-
"""Configuration and result types of the vessel fitting."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from vesselforge.errors import ConfigError, FitError
from vesselforge.spline.bspline import Spline4


class Strategy(str, Enum):
    """Named approximation strategies."""

    GNP = "GNP"  # global, non-penalized
    GNP_AIC = "GNP_AIC"  # global, non-penalized, control count by AIC
    GP_AIC = "GP_AIC"  # global, penalized
    SRP_AIC = "SRP_AIC"  # spatial and radius penalized separately


class Criterion(str, Enum):
    """Smoothing parameter selection criteria."""

    AIC = "AIC"
    AICC = "AICc"
    BIC = "BIC"
    CV = "CV"
    GCV = "GCV"


def default_lambda_grid(lo: float = 1e-6, hi: float = 1e6, count: int = 40) -> Tuple[float, ...]:
    return tuple(float(v) for v in np.logspace(np.log10(lo), np.log10(hi), count))


@dataclass(frozen=True)
class FitConfig:
    """Fitting options.

    Attributes
    ----------
    strategy : Strategy
        Approximation strategy, ``SRP_AIC`` by default.
    rmse_threshold_spatial : float
        Control point count rule for x, y, z (mm).
    rmse_threshold_radius : float
        Control point count rule for r (mm).
    lambda_grid : Tuple[float, ...]
        Candidate smoothing parameters, ascending.
    criterion : Criterion
        Selection criterion for the smoothing parameter.
    refine_lambda : bool
        Golden-section refinement around the grid minimum.
    max_control_points : int
        Upper bound of every control point search.
    """

    strategy: Strategy = Strategy.SRP_AIC
    rmse_threshold_spatial: float = 1e-1
    rmse_threshold_radius: float = 1e-3
    lambda_grid: Tuple[float, ...] = field(default_factory=default_lambda_grid)
    criterion: Criterion = Criterion.AIC
    refine_lambda: bool = True
    max_control_points: int = 200

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "strategy", Strategy(self.strategy))
            object.__setattr__(self, "criterion", Criterion(self.criterion))
        except ValueError as e:
            raise ConfigError(str(e)) from None
        grid = tuple(sorted(float(v) for v in self.lambda_grid))
        object.__setattr__(self, "lambda_grid", grid)
        if not (self.rmse_threshold_spatial > 0 and self.rmse_threshold_radius > 0):
            raise ConfigError("RMSE thresholds must be positive")
        if not grid or grid[0] <= 0:
            raise ConfigError("lambda grid must be nonempty and positive")
        if self.max_control_points < 4:
            raise ConfigError("max_control_points must be at least 4")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "strategy": self.strategy.value,
            "rmse_threshold_spatial": self.rmse_threshold_spatial,
            "rmse_threshold_radius": self.rmse_threshold_radius,
            "lambda_grid": list(self.lambda_grid),
            "criterion": self.criterion.value,
            "refine_lambda": self.refine_lambda,
            "max_control_points": self.max_control_points,
        }

    def replace(self, **changes: Any) -> "FitConfig":
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update(changes)
        return FitConfig(**values)


@dataclass(frozen=True)
class EndConstraint:
    """Fixed end point ``S`` and end tangent direction ``T`` of a fit.

    ``T`` always points in the direction of increasing parameter, so at the
    end of a curve it points out of the curve.
    """

    point: np.ndarray
    tangent: np.ndarray

    def __post_init__(self) -> None:
        point = np.asarray(self.point, dtype=float).reshape(-1)
        tangent = np.asarray(self.tangent, dtype=float).reshape(-1)
        norm = np.linalg.norm(tangent)
        if not norm > 0:
            raise FitError("constraint tangent has zero length")
        if point.shape != tangent.shape:
            raise FitError("constraint point and tangent dimensions differ")
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "tangent", tangent / norm)

    def to_dict(self) -> Dict[str, Any]:
        return {"point": self.point.tolist(), "tangent": self.tangent.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EndConstraint":
        return cls(np.asarray(data["point"]), np.asarray(data["tangent"]))


Constraints = Tuple[Optional[EndConstraint], Optional[EndConstraint]]


@dataclass
class FitResult:
    """Outcome of :func:`fit_vessel`."""

    spline: Spline4
    lambda_spatial: float
    lambda_radius: float
    n_control: int
    sse: float
    criterion_trace: List[Tuple[float, float]] = field(default_factory=list)
    strategy: str = Strategy.SRP_AIC.value
    n_control_radius: Optional[int] = None
    rmse_spatial: float = 0.0
    rmse_radius: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "strategy": self.strategy,
            "spline": self.spline.to_dict(),
            "lambda_spatial": self.lambda_spatial,
            "lambda_radius": self.lambda_radius,
            "n_control": self.n_control,
            "n_control_radius": self.n_control_radius,
            "sse": self.sse,
            "rmse_spatial": self.rmse_spatial,
            "rmse_radius": self.rmse_radius,
            "criterion_trace": [list(v) for v in self.criterion_trace],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FitResult":
        return cls(
            spline=Spline4.from_dict(data["spline"]),
            lambda_spatial=float(data["lambda_spatial"]),
            lambda_radius=float(data["lambda_radius"]),
            n_control=int(data["n_control"]),
            sse=float(data["sse"]),
            criterion_trace=[tuple(v) for v in data.get("criterion_trace", [])],
            strategy=data.get("strategy", Strategy.SRP_AIC.value),
            n_control_radius=data.get("n_control_radius"),
            rmse_spatial=float(data.get("rmse_spatial", 0.0)),
            rmse_radius=float(data.get("rmse_radius", 0.0)),
        )
