# -*- coding: utf-8 -*-
"""Clamped uniform B-splines of arbitrary coordinate dimension."""

import warnings
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import BSpline
from scipy.optimize import brentq, minimize_scalar

from vesselforge.errors import SplineError

DEGREE = 3
PARAM_TOL = 1e-12
# smallest relative tolerance brentq accepts
BRENT_RTOL = 4 * np.finfo(float).eps
ArrayLike = Union[np.ndarray, list, tuple]


def clamped_uniform_knots(n: int, degree: int = DEGREE) -> np.ndarray:
    """Knot vector of ``n + degree + 1`` values, clamped on [0, 1], uniform inside."""
    if n < degree + 1:
        raise SplineError(f"need at least {degree + 1} control points, got {n}")
    interior = np.linspace(0.0, 1.0, n - degree + 1)[1:-1]
    return np.concatenate([np.zeros(degree + 1), interior, np.ones(degree + 1)])


def greville_abscissae(n: int, degree: int = DEGREE) -> np.ndarray:
    """Parameters associated with each control point (knot averages)."""
    knots = clamped_uniform_knots(n, degree)
    return np.array([knots[i + 1 : i + degree + 1].mean() for i in range(n)])


def design_matrix(t: ArrayLike, n: int, degree: int = DEGREE) -> np.ndarray:
    """Dense ``(len(t), n)`` matrix of basis function values at ``t``."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    knots = clamped_uniform_knots(n, degree)
    return BSpline.design_matrix(t, knots, degree).toarray()


class SplineD:
    """Clamped B-spline ``s(u) = sum_i N_i(u) P_i`` on ``u`` in [0, 1].

    Parameters
    ----------
    control_points : array_like
        ``(n, D)`` control points.
    degree : int
        Polynomial degree, 3 unless stated otherwise.
    """

    def __init__(self, control_points: ArrayLike, degree: int = DEGREE) -> None:
        points = np.array(control_points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2:
            raise SplineError("control points must be a 2D array")
        self.degree = int(degree)
        self.knots = clamped_uniform_knots(len(points), self.degree)
        points.setflags(write=False)
        self.control_points = points
        self._curves = [BSpline(self.knots, points, self.degree, extrapolate=False)]
        self._curves.append(self._curves[0].derivative(1))
        self._curves.append(self._curves[0].derivative(2))
        self._length: Optional[float] = None

    @property
    def n(self) -> int:
        return len(self.control_points)

    @property
    def dim(self) -> int:
        return self.control_points.shape[1]

    def __call__(self, u: ArrayLike, order: int = 0) -> np.ndarray:
        """Vectorised evaluation; ``u`` values are clipped into [0, 1]."""
        if order not in (0, 1, 2):
            raise SplineError(f"derivative order must be 0, 1 or 2, got {order}")
        u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
        return self._curves[order](u)

    def evaluate(self, u: float, order: int = 0) -> np.ndarray:
        """Position (order 0) or analytic derivative (order 1, 2) at ``u``.

        Raises
        ------
        SplineError
            If ``u`` lies outside [0, 1].
        """
        return self(check_parameter(u), order)

    def with_control_points(self, control_points: ArrayLike) -> "SplineD":
        return type(self)(control_points, self.degree)

    def spatial(self) -> "SplineD":
        """Spline of the first three coordinates."""
        return SplineD(self.control_points[:, :3], self.degree)

    # ----------------------------------------------------------- geometry
    def curvature(self, u: ArrayLike) -> np.ndarray:
        return curvature(self, u)

    def arc_length(self, u0: float = 0.0, u1: float = 1.0) -> float:
        return arc_length(self, u0, u1)

    @property
    def length(self) -> float:
        if self._length is None:
            self._length = arc_length(self, 0.0, 1.0)
        return self._length

    def length_to_u(self, u0: float, length: float) -> float:
        return length_to_u(self, u0, length)

    def project(self, q: ArrayLike) -> Tuple[float, float]:
        return project_point(self, q)

    # ------------------------------------------------------ serialisation
    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "knots": self.knots.tolist(),
            "control_points": self.control_points.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SplineD":
        return cls(data["control_points"], data.get("degree", DEGREE))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SplineD)
            and self.degree == other.degree
            and np.array_equal(self.control_points, other.control_points)
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, dim={self.dim}, degree={self.degree})"


class Spline4(SplineD):
    """Vessel model: a ``SplineD`` over (x, y, z, r)."""

    def __init__(self, control_points: ArrayLike, degree: int = DEGREE) -> None:
        super().__init__(control_points, degree)
        if self.dim != 4:
            raise SplineError(f"Spline4 needs 4 coordinates, got {self.dim}")

    def position(self, u: ArrayLike) -> np.ndarray:
        return self(u)[..., :3]

    def radius(self, u: ArrayLike) -> np.ndarray:
        return self(u)[..., 3]

    def tangent(self, u: ArrayLike) -> np.ndarray:
        """Unit spatial tangent."""
        d1 = self(u, 1)[..., :3]
        norm = np.linalg.norm(d1, axis=-1, keepdims=True)
        if np.any(norm < 1e-14):
            raise SplineError("vanishing first derivative")
        return d1 / norm


def check_parameter(u: float) -> float:
    u = float(u)
    if u < -PARAM_TOL or u > 1.0 + PARAM_TOL or np.isnan(u):
        raise SplineError(f"parameter {u} outside [0, 1]")
    return min(max(u, 0.0), 1.0)


def curvature(s: SplineD, u: ArrayLike) -> np.ndarray:
    """``|s' x s''| / |s'|^3`` of the spatial coordinates."""
    d1 = _spatial3(s(u, 1))
    d2 = _spatial3(s(u, 2))
    speed = np.linalg.norm(d1, axis=-1)
    if np.any(speed < 1e-14):
        raise SplineError("vanishing first derivative")
    return np.linalg.norm(np.cross(d1, d2), axis=-1) / speed**3


def _spatial3(values: np.ndarray) -> np.ndarray:
    if values.shape[-1] >= 3:
        return values[..., :3]
    pad = [(0, 0)] * (values.ndim - 1) + [(0, 3 - values.shape[-1])]
    return np.pad(values, pad)


def _speed(s: SplineD, u: float) -> float:
    return float(np.linalg.norm(_spatial3(s(u, 1))))


def arc_length(s: SplineD, u0: float = 0.0, u1: float = 1.0) -> float:
    """Spatial arc length between ``u0`` and ``u1`` by adaptive quadrature."""
    u0, u1 = check_parameter(u0), check_parameter(u1)
    if u1 < u0:
        raise SplineError(f"arc_length needs u0 <= u1, got {u0} > {u1}")
    if u1 == u0:
        return 0.0
    breaks = [k for k in np.unique(s.knots) if u0 < k < u1]
    value, _ = quad(
        lambda u: _speed(s, u), u0, u1, points=breaks or None, epsabs=0.0, epsrel=1e-10, limit=200
    )
    return float(value)


def arc_length_table(s: SplineD, samples: int = 2001) -> Tuple[np.ndarray, np.ndarray]:
    """Dense ``(u, length)`` table of cumulative spatial arc length, trapezoid rule."""
    u = np.linspace(0.0, 1.0, samples)
    speed = np.linalg.norm(_spatial3(s(u, 1)), axis=1)
    return u, np.concatenate([[0.0], np.cumsum(0.5 * (speed[1:] + speed[:-1]) * np.diff(u))])


def length_to_u(s: SplineD, u0: float, length: float) -> float:
    """Parameter reached after travelling ``length`` mm from ``u0``.

    Negative lengths travel upstream.

    Raises
    ------
    SplineError
        If the requested length runs past an end of the spline.
    """
    u0 = check_parameter(u0)
    if length == 0:
        return u0
    if length > 0:
        available = arc_length(s, u0, 1.0)
        if length > available * (1 + 1e-12):
            raise SplineError(f"length {length:.6g} exceeds remaining {available:.6g}")
        if length >= available:
            return 1.0
        return float(brentq(lambda u: arc_length(s, u0, u) - length, u0, 1.0, xtol=1e-15, rtol=BRENT_RTOL))
    available = arc_length(s, 0.0, u0)
    if -length > available * (1 + 1e-12):
        raise SplineError(f"length {-length:.6g} exceeds upstream {available:.6g}")
    if -length >= available:
        return 0.0
    return float(brentq(lambda u: arc_length(s, u, u0) + length, 0.0, u0, xtol=1e-15, rtol=BRENT_RTOL))


def project_point(s: SplineD, q: ArrayLike, samples: int = 512) -> Tuple[float, float]:
    """Global closest parameter of the spatial curve to ``q``.

    Dense sampling picks the best sample (lowest ``u`` on ties), then a
    bounded scalar minimisation and Newton polishing bring
    ``|d/du dist^2|`` under 1e-10 for interior minima.
    """
    q = np.asarray(q, dtype=float)[:3]
    us = np.linspace(0.0, 1.0, max(samples, 200))
    d2 = np.sum((_spatial3(s(us)) - q) ** 2, axis=1)
    i = int(np.argmin(d2))
    lo, hi = us[max(i - 1, 0)], us[min(i + 1, len(us) - 1)]

    def dist2(u: float) -> float:
        return float(np.sum((_spatial3(s(u)) - q) ** 2))

    best = minimize_scalar(dist2, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
    u = float(best.x) if best.fun <= d2[i] else float(us[i])
    for _ in range(20):
        diff = _spatial3(s(u)) - q
        d1 = _spatial3(s(u, 1))
        grad = 2.0 * float(diff @ d1)
        if abs(grad) < 1e-10:
            break
        hess = 2.0 * float(d1 @ d1 + diff @ _spatial3(s(u, 2)))
        if hess <= 0:
            break
        step = u - grad / hess
        if not lo <= step <= hi:
            break
        if dist2(step) > dist2(u) + 1e-15:
            break
        u = step
    return u, float(np.sqrt(dist2(u)))


def collapse_duplicates(points: ArrayLike, tol: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """Drop consecutive points with identical spatial coordinates.

    Returns the kept points and the boolean mask over the input. Emits a
    warning when anything was dropped.
    """
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return points, np.zeros(0, dtype=bool)
    steps = np.linalg.norm(np.diff(points[:, :3], axis=0), axis=1)
    keep = np.concatenate([[True], steps > tol])
    if not keep.all():
        warnings.warn(f"dropped {int((~keep).sum())} duplicate consecutive point(s)", stacklevel=2)
    return points[keep], keep


def chord_length_parametrize(points: ArrayLike) -> np.ndarray:
    """Cumulative spatial chord length normalised to [0, 1].

    Consecutive duplicates are collapsed first, so the result matches the
    points returned by :func:`collapse_duplicates`.

    Raises
    ------
    SplineError
        Fewer than two distinct points.
    """
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        raise SplineError("chord-length parametrization needs at least 2 points")
    kept, _ = collapse_duplicates(points)
    if len(kept) < 2:
        raise SplineError("all points coincide")
    chords = np.linalg.norm(np.diff(kept[:, :3], axis=0), axis=1)
    t = np.concatenate([[0.0], np.cumsum(chords)])
    t /= t[-1]
    t[-1] = 1.0
    return t


def evaluate(s: SplineD, u: float, order: int = 0) -> np.ndarray:
    """Functional form of :meth:`SplineD.evaluate`."""
    return s.evaluate(u, order)
