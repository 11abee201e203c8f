# -*- coding: utf-8 -*-
"""Decomposition of a furcation into branch patches by separation half planes."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from vesselforge.errors import DecompositionError
from vesselforge.mesher.params import MeshParams
from vesselforge.model.tube import TubeSurface, tube_distance
from vesselforge.model.types import FurcationModel
from vesselforge.spline.bspline import Spline4
from vesselforge.spline.projector import CurveProjector

KEY_POINT_SAMPLES = 200


@dataclass
class SeparationGeometry:
    """Separation planes of one furcation.

    ``arcs`` are ordered ``[SP_first, AP_1, ..., AP_{n-1}, SP_last]``; arc
    ``h`` holds ``N/2 + 1`` surface points on the rays
    ``-cos(t) w + sin(t) d_h`` from ``center``, ``t`` in [0, pi], so every
    arc starts at CT0 and ends at CT1.
    """

    junction: int
    center: np.ndarray
    plane_normal: np.ndarray
    apexes: List[np.ndarray]
    separation_points: List[np.ndarray]
    center_points: Tuple[np.ndarray, np.ndarray]
    key_points: List[np.ndarray]
    key_projections: List[np.ndarray]
    arc_directions: List[np.ndarray]
    arcs: List[np.ndarray]
    surface: Optional[TubeSurface] = field(default=None, repr=False)

    @property
    def plan_count(self) -> int:
        return len(self.arcs)

    def arc_for_outlet(self, index: int) -> Tuple[int, int]:
        """``(right, left)`` arc indices around outlet ``index``."""
        return index + 1, index

    def arc_for_inlet(self) -> Tuple[int, int]:
        return len(self.arcs) - 1, 0


def _in_plane(vector: np.ndarray, w: np.ndarray) -> np.ndarray:
    vector = vector - (vector @ w) * w
    norm = np.linalg.norm(vector)
    if norm < 1e-12:
        raise DecompositionError("separation direction is parallel to the plane normal")
    return vector / norm


def key_point(centerline: Spline4, tube: Spline4, u_start: float) -> np.ndarray:
    """Where ``centerline`` leaves ``tube`` downstream of ``u_start``."""
    projector = CurveProjector(tube)
    us = np.linspace(u_start, 1.0, KEY_POINT_SAMPLES)
    values = tube_distance(tube, centerline.position(us), projector)
    outside = np.nonzero(values >= 0.0)[0]
    if not len(outside):
        raise DecompositionError("centerline never leaves the neighbouring tube")
    i = int(outside[0])
    if i == 0:
        return centerline.position(u_start)
    u = brentq(
        lambda x: float(tube_distance(tube, centerline.position(np.array([x])), projector)[0]),
        us[i - 1], us[i], xtol=1e-13,
    )
    return centerline.position(u)


def _ray(surface: TubeSurface, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
    points, hit = surface.ray_exit(origin[None, :], directions)
    if not hit.all():
        raise DecompositionError("projection leaves the tube surface")
    return points


def decompose_furcation(model: FurcationModel, params: Optional[MeshParams] = None) -> SeparationGeometry:
    """Separation half planes of a furcation model.

    The barycenter ``X`` of the apexes and of the key point projections is
    the common origin. CT0 and CT1 lie along ``-w`` and ``+w`` from ``X``;
    the outer separation points sit on the outer walls of the first and
    last outlets.

    Raises
    ------
    DecompositionError
        Grazing geometry: a key point is missing, ``X`` is outside the
        surface or a projection ray misses.
    """
    params = params or MeshParams()
    half = params.N // 2
    splines = model.splines
    w = np.asarray(model.plane_normal, dtype=float)
    surface = TubeSurface(splines)

    key_points, projections = [], []
    for apex in model.apexes:
        a, b = apex.pair
        for i, j in ((a, b), (b, a)):
            m = key_point(splines[i], splines[j], model.junction_params[i])
            v, _ = splines[j].project(m)
            key_points.append(m)
            projections.append(splines[j].position(v))

    apex_points = [np.asarray(a.point, dtype=float) for a in model.apexes]
    X = np.mean(apex_points + projections, axis=0)
    if surface.signed_distance(X[None, :])[0] >= 0.0:
        raise DecompositionError("barycenter lies outside the surface")

    ct = _ray(surface, X, np.array([-w, w]))
    ct0, ct1 = ct[0], ct[1]

    separation_points, sp_directions = [], []
    for index, sign in ((0, -1.0), (len(splines) - 1, 1.0)):
        spline = splines[index]
        u, _ = spline.project(X)
        tangent = spline.tangent(u)
        outward = sign * np.cross(w, tangent)
        candidate = spline.position(u) + spline.radius(u) * outward / np.linalg.norm(outward)
        direction = _in_plane(candidate - X, w)
        separation_points.append(_ray(surface, X, direction[None, :])[0])
        sp_directions.append(direction)

    directions = [sp_directions[0]] + [_in_plane(p - X, w) for p in apex_points] + [sp_directions[1]]
    theta = np.pi * np.arange(half + 1) / half
    arcs = []
    for d in directions:
        rays = -np.cos(theta)[:, None] * w + np.sin(theta)[:, None] * d
        points = _ray(surface, X, rays[1:-1])
        arcs.append(np.vstack([ct0, points, ct1]))

    return SeparationGeometry(
        junction=model.junction,
        center=X,
        plane_normal=w,
        apexes=apex_points,
        separation_points=separation_points,
        center_points=(ct0, ct1),
        key_points=key_points,
        key_projections=projections,
        arc_directions=directions,
        arcs=arcs,
        surface=surface,
    )
