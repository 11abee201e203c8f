from vesselforge.fitting.control_count import aic_control_count, rmse_control_count
from vesselforge.fitting.criteria import CriterionScore, criterion_value, select_lambda
from vesselforge.fitting.fit import fit_vessel
from vesselforge.fitting.penalty import (
    PenalizedSystem,
    penalty_matrix,
    roughness,
    solve_constrained,
    solve_penalized,
)
from vesselforge.fitting.types import (
    Constraints,
    Criterion,
    EndConstraint,
    FitConfig,
    FitResult,
    Strategy,
)

__all__ = [
    "Constraints",
    "Criterion",
    "CriterionScore",
    "EndConstraint",
    "FitConfig",
    "FitResult",
    "PenalizedSystem",
    "Strategy",
    "aic_control_count",
    "criterion_value",
    "fit_vessel",
    "penalty_matrix",
    "rmse_control_count",
    "roughness",
    "select_lambda",
    "solve_constrained",
    "solve_penalized",
]
