# -*- coding: utf-8 -*-
"""Penalized least squares on a clamped cubic B-spline basis.

The objective is ``|N P - Y|^2 + lam * |D2 P|^2`` where ``N`` is the basis
design matrix at the data parameters and ``D2`` the second-difference
operator on the control sequence.
"""

from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from vesselforge.errors import FitError, SingularSystemError
from vesselforge.fitting.types import Constraints, EndConstraint
from vesselforge.spline.bspline import DEGREE, design_matrix

# alpha and beta never drop below this fraction of the data chord length
MAGNITUDE_FLOOR = 1e-6


def difference_matrix(n: int, order: int = 2) -> np.ndarray:
    """``(n - order, n)`` finite difference operator."""
    if n < order + 1:
        raise FitError(f"difference operator of order {order} needs n >= {order + 1}, got {n}")
    return np.diff(np.eye(n), n=order, axis=0)


def penalty_matrix(n: int) -> np.ndarray:
    """Return ``D2^T D2`` for ``n`` control points.

    Raises
    ------
    FitError
        ``n < 3``.
    """
    d2 = difference_matrix(n, 2)
    return d2.T @ d2


def roughness(control_points: np.ndarray) -> float:
    """Sum of squared second differences of a control sequence."""
    control_points = np.asarray(control_points, dtype=float)
    if len(control_points) < 3:
        return 0.0
    return float(np.sum(np.diff(control_points, n=2, axis=0) ** 2))


class PenalizedSystem:
    """Normal equations of one data set on one basis, reusable across ``lam``.

    The generalized eigenproblem ``Delta v = s (N^T N) v`` diagonalizes both
    matrices at once, so coefficients, hat-matrix trace and diagonal cost a
    few matrix products per ``lam``. When ``N^T N`` is singular every
    query falls back to a direct solve.

    Parameters
    ----------
    data : np.ndarray
        ``(m, D)`` samples.
    t : np.ndarray
        ``(m,)`` parameters in [0, 1].
    n : int
        Number of control points.
    """

    def __init__(self, data: np.ndarray, t: np.ndarray, n: int) -> None:
        data = np.asarray(data, dtype=float)
        if data.ndim == 1:
            data = data[:, None]
        t = np.asarray(t, dtype=float)
        if len(t) != len(data):
            raise FitError("parameter and data lengths differ")
        if n < DEGREE + 1:
            raise FitError(f"need at least {DEGREE + 1} control points, got {n}")
        self.data = data
        self.t = t
        self.n = int(n)
        self.m = len(data)
        self.basis = design_matrix(t, n)
        self.gram = self.basis.T @ self.basis
        self.delta = penalty_matrix(n)
        self.moment = self.basis.T @ data
        self._eigen: Optional[Tuple[np.ndarray, np.ndarray]] = None
        self._eigen_failed = False

    def _decomposition(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        if self._eigen is None and not self._eigen_failed:
            try:
                s, vectors = scipy.linalg.eigh(self.delta, self.gram)
            except (np.linalg.LinAlgError, ValueError):
                self._eigen_failed = True
            else:
                self._eigen = (np.clip(s, 0.0, None), vectors)
        return self._eigen

    def _least_squares(self) -> np.ndarray:
        coefficients, _, rank, _ = np.linalg.lstsq(self.basis, self.data, rcond=None)
        if rank < self.n:
            raise SingularSystemError(f"design matrix rank {rank} < {self.n} control points with lambda = 0")
        return coefficients

    def _solve(self, lam: float, rhs: np.ndarray) -> np.ndarray:
        try:
            return scipy.linalg.solve(self.gram + lam * self.delta, rhs, assume_a="sym")
        except (np.linalg.LinAlgError, ValueError) as e:
            raise SingularSystemError(f"penalized normal equations singular at lambda = {lam:g}") from e

    def coefficients(self, lam: float) -> np.ndarray:
        """Unconstrained control points ``(N^T N + lam Delta)^-1 N^T Y``."""
        if lam == 0:
            return self._least_squares()
        eigen = self._decomposition()
        if eigen is None:
            return self._solve(lam, self.moment)
        s, vectors = eigen
        return vectors @ ((vectors.T @ self.moment) / (1.0 + lam * s)[:, None])

    def trace(self, lam: float) -> float:
        """Effective degrees of freedom ``tr(H)``."""
        if lam == 0 and self.m >= self.n:
            return float(self.n)
        eigen = self._decomposition()
        if eigen is None:
            return float(np.trace(self._solve(lam, self.gram)))
        s, _ = eigen
        return float(np.sum(1.0 / (1.0 + lam * s)))

    def hat_diagonal(self, lam: float) -> np.ndarray:
        eigen = self._decomposition()
        if eigen is None:
            if lam == 0:
                pinv = np.linalg.pinv(self.gram)
                return np.einsum("ij,jk,ik->i", self.basis, pinv, self.basis)
            solved = self._solve(lam, self.basis.T)
            return np.einsum("ij,ji->i", self.basis, solved)
        s, vectors = eigen
        projected = self.basis @ vectors
        return np.sum(projected**2 / (1.0 + lam * s)[None, :], axis=1)

    def residuals(self, control_points: np.ndarray) -> np.ndarray:
        return self.data - self.basis @ control_points

    def sse(self, lam: float) -> float:
        return float(np.sum(self.residuals(self.coefficients(lam)) ** 2))


def _chord(data: np.ndarray) -> float:
    spatial = data[:, : min(3, data.shape[1])]
    return float(np.sum(np.linalg.norm(np.diff(spatial, axis=0), axis=1)))


def solve_constrained(
    system: PenalizedSystem,
    lam: float,
    constraints: Constraints,
    floor: Optional[float] = None,
) -> Tuple[np.ndarray, Optional[float], Optional[float]]:
    """Penalized fit with fixed end points and end tangent directions.

    ``P0 = S0`` and ``P1 = S0 + alpha T0`` at the start, ``P[n-1] = S1`` and
    ``P[n-2] = S1 - beta T1`` at the end. The interior control points and the
    magnitudes are the unknowns of one stacked least squares problem. A
    magnitude below ``floor`` is fixed at ``floor`` and the rest re-solved.

    Returns
    -------
    Tuple[np.ndarray, Optional[float], Optional[float]]
        Control points and the magnitudes (None for an unconstrained end).
    """
    start, end = constraints
    n, dim = system.n, system.data.shape[1]
    for c in (start, end):
        if c is not None and len(c.point) != dim:
            raise FitError(f"constraint dimension {len(c.point)} does not match data dimension {dim}")
    if floor is None:
        floor = MAGNITUDE_FLOOR * max(_chord(system.data), 1e-12)

    stacked = np.vstack([system.basis, np.sqrt(lam) * difference_matrix(n, 2)])
    target = np.vstack([system.data, np.zeros((n - 2, dim))])
    fixed_alpha: Optional[float] = None
    fixed_beta: Optional[float] = None

    for _ in range(3):
        base = np.zeros((n, dim))
        free_rows = list(range(n))
        magnitude_columns = []
        if start is not None:
            base[0] = start.point
            base[1] = start.point + (fixed_alpha or 0.0) * start.tangent
            free_rows.remove(0)
            free_rows.remove(1)
            if fixed_alpha is None:
                direction = np.zeros((n, dim))
                direction[1] = start.tangent
                magnitude_columns.append(("alpha", direction))
        if end is not None:
            base[n - 1] = end.point
            base[n - 2] = end.point - (fixed_beta or 0.0) * end.tangent
            free_rows.remove(n - 1)
            free_rows.remove(n - 2)
            if fixed_beta is None:
                direction = np.zeros((n, dim))
                direction[n - 2] = -end.tangent
                magnitude_columns.append(("beta", direction))

        # vec(stacked @ P) is linear in the unknowns; one column per unknown
        columns = []
        for _, direction in magnitude_columns:
            columns.append((stacked @ direction).ravel())
        for row in free_rows:
            for d in range(dim):
                column = np.zeros((stacked.shape[0], dim))
                column[:, d] = stacked[:, row]
                columns.append(column.ravel())
        rhs = (target - stacked @ base).ravel()

        control = base.copy()
        values = {}
        if columns:
            matrix = np.column_stack(columns)
            solution, _, rank, _ = np.linalg.lstsq(matrix, rhs, rcond=None)
            if rank < matrix.shape[1]:
                raise SingularSystemError(f"constrained system rank {rank} < {matrix.shape[1]} unknowns")
            k = 0
            for name, direction in magnitude_columns:
                values[name] = float(solution[k])
                control += solution[k] * direction
                k += 1
            interior = solution[k:].reshape(len(free_rows), dim)
            control[free_rows] = interior

        again = False
        if "alpha" in values and values["alpha"] < floor:
            fixed_alpha, again = floor, True
        if "beta" in values and values["beta"] < floor:
            fixed_beta, again = floor, True
        if not again:
            alpha = values.get("alpha", fixed_alpha) if start is not None else None
            beta = values.get("beta", fixed_beta) if end is not None else None
            return control, alpha, beta
    raise FitError("constrained solve did not settle")


def solve_penalized(
    data: np.ndarray,
    t: np.ndarray,
    n: int,
    lam: float,
    constraints: Optional[Constraints] = None,
) -> np.ndarray:
    """Control points of the penalized fit, optionally end constrained.

    Raises
    ------
    SingularSystemError
        Rank-deficient system, typically ``lam = 0`` with too few data
        points inside some basis support.
    FitError
        Invalid sizes or constraints.
    """
    if lam < 0:
        raise FitError("lambda must be nonnegative")
    system = PenalizedSystem(data, t, n)
    if constraints is None or (constraints[0] is None and constraints[1] is None):
        if lam == 0 and system.m < n:
            raise SingularSystemError(f"{system.m} data points cannot determine {n} control points")
        return system.coefficients(lam)
    control, _, _ = solve_constrained(system, lam, constraints)
    return control


def spatial_constraints(constraints: Optional[Constraints]) -> Optional[Constraints]:
    """Restrict 4-coordinate constraints to x, y, z."""
    if constraints is None:
        return None
    return tuple(
        None if c is None else EndConstraint(c.point[:3], c.tangent[:3]) for c in constraints
    )  # type: ignore[return-value]
