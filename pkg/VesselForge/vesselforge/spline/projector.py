# -*- coding: utf-8 -*-
"""Batch closest-point queries against one spline."""

from typing import Tuple

import numpy as np
from scipy.spatial import cKDTree

from vesselforge.spline.bspline import SplineD, _spatial3


class CurveProjector:
    """Closest parameters of many points on a spline's spatial curve.

    A k-d tree over dense samples seeds each query and a few vectorised,
    bracket-limited Newton steps refine it.

    Parameters
    ----------
    spline : SplineD
        Curve to project on.
    samples : int
        Number of seed samples.
    """

    def __init__(self, spline: SplineD, samples: int = 2000) -> None:
        self.spline = spline
        self.params = np.linspace(0.0, 1.0, samples)
        self.points = _spatial3(spline(self.params))
        self.tree = cKDTree(self.points)
        self.step = self.params[1] - self.params[0]

    def project(self, queries: np.ndarray, iterations: int = 12) -> Tuple[np.ndarray, np.ndarray]:
        """Return ``(u, distance)`` arrays for ``(k, 3)`` queries."""
        queries = np.atleast_2d(np.asarray(queries, dtype=float))[:, :3]
        _, index = self.tree.query(queries)
        u = self.params[index]
        lo = np.clip(u - self.step, 0.0, 1.0)
        hi = np.clip(u + self.step, 0.0, 1.0)
        for _ in range(iterations):
            diff = _spatial3(self.spline(u)) - queries
            d1 = _spatial3(self.spline(u, 1))
            d2 = _spatial3(self.spline(u, 2))
            grad = np.einsum("ij,ij->i", diff, d1)
            hess = np.einsum("ij,ij->i", d1, d1) + np.einsum("ij,ij->i", diff, d2)
            safe = np.where(hess > 1e-14, hess, 1.0)
            step = np.where(hess > 1e-14, grad / safe, 0.0)
            u = np.clip(u - step, lo, hi)
        dist = np.linalg.norm(_spatial3(self.spline(u)) - queries, axis=1)
        return u, dist
