# -*- coding: utf-8 -*-
"""Tube surfaces swept by Spline4 models.

A tube is the set of points within ``r(v)`` of ``c(v)`` where ``v`` is the
closest centerline parameter. Distances are signed: negative inside.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from vesselforge.spline.bspline import Spline4
from vesselforge.spline.projector import CurveProjector

RAY_STEPS = 96
FAR_STEPS_PER_RADIUS = 8
MAX_RAY_STEPS = 4096
BISECTIONS = 48


def tube_distance(spline: Spline4, points: np.ndarray, projector: Optional[CurveProjector] = None) -> np.ndarray:
    """Signed distance of ``(k, 3)`` points to the tube of ``spline``."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    projector = projector or CurveProjector(spline)
    u, dist = projector.project(points)
    return dist - spline.radius(u)


def tube_surface_distance(sA: Spline4, sB: Spline4, u: float) -> float:
    """Penetration depth of tube A's section at ``u`` into tube B.

    ``|cA(u) - cB(v*)| - (rA(u) + rB(v*))`` with ``v*`` the closest
    parameter of ``cA(u)`` on B; negative when the sections overlap.
    """
    center = sA.position(u)
    v, dist = sB.project(center)
    return float(dist - (sA.radius(u) + sB.radius(v)))


class TubeSurface:
    """Union of tubes, with signed distance and first-exit ray casting.

    Parameters
    ----------
    splines : Sequence[Spline4]
        Member tubes.
    samples : int
        Seed samples of each projector.
    """

    def __init__(self, splines: Sequence[Spline4], samples: int = 2000) -> None:
        self.splines = list(splines)
        self.projectors = [CurveProjector(s, samples) for s in self.splines]
        self.max_radius = max(float(np.max(s.control_points[:, 3])) for s in self.splines)
        min_radius = min(float(np.min(s.control_points[:, 3])) for s in self.splines)
        points = np.vstack([s.control_points[:, :3] for s in self.splines])
        # no ray starting inside the union travels further than this
        self.extent = float(np.linalg.norm(points.max(axis=0) - points.min(axis=0))) + 2.0 * self.max_radius
        self.ray_step = max(min_radius, 1e-3 * self.max_radius) / FAR_STEPS_PER_RADIUS

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = [tube_distance(s, points, p) for s, p in zip(self.splines, self.projectors)]
        return np.min(values, axis=0)

    def ray_exit(
        self,
        origins: np.ndarray,
        directions: np.ndarray,
        max_distance: Optional[float] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """First point where rays leave the union.

        Returns the hit points and a boolean mask; rays that start outside
        or never leave within ``max_distance`` are masked out and return
        their origin.
        """
        origins = np.atleast_2d(np.asarray(origins, dtype=float))
        directions = np.atleast_2d(np.asarray(directions, dtype=float))
        directions = directions / np.linalg.norm(directions, axis=1, keepdims=True)
        if len(origins) == 1 and len(directions) > 1:
            origins = np.repeat(origins, len(directions), axis=0)
        k = len(origins)
        inside_start = self.signed_distance(origins) < 0.0
        hit = np.zeros(k, dtype=bool)
        lo, hi = np.zeros(k), np.zeros(k)

        near = 4.0 * self.max_radius
        far = self.extent if max_distance is None else float(max_distance)
        stages = [(0.0, min(near, far), RAY_STEPS)]
        if far > near:
            # rays running along a member tube leave it only near its far end
            count = int(np.clip(np.ceil((far - near) / self.ray_step), 1, MAX_RAY_STEPS))
            stages.append((near, far, count))
        for start, stop, count in stages:
            todo = np.flatnonzero(inside_start & ~hit)
            if not len(todo):
                break
            steps = np.linspace(start, stop, count + 1)
            samples = origins[todo, None, :] + steps[None, :, None] * directions[todo, None, :]
            outside = self.signed_distance(samples.reshape(-1, 3)).reshape(len(todo), count + 1) >= 0.0
            outside[:, 0] = False
            found = outside.any(axis=1)
            first = np.argmax(outside, axis=1)
            rows = todo[found]
            lo[rows] = steps[first[found] - 1]
            hi[rows] = steps[first[found]]
            hit[rows] = True

        for _ in range(BISECTIONS):
            middle = 0.5 * (lo + hi)
            value = self.signed_distance(origins + middle[:, None] * directions)
            out = value >= 0.0
            hi = np.where(out, middle, hi)
            lo = np.where(out, lo, middle)
        t = 0.5 * (lo + hi)
        points = np.where(hit[:, None], origins + t[:, None] * directions, origins)
        return points, hit

    def project_radially(self, centers: np.ndarray, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Move ``points`` onto the surface along rays from ``centers``."""
        centers = np.atleast_2d(np.asarray(centers, dtype=float))
        points = np.atleast_2d(np.asarray(points, dtype=float))
        directions = points - centers
        return self.ray_exit(centers, directions)
