# -*- coding: utf-8 -*-
"""Furcation model estimation from raw centerline data."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from vesselforge.centerline.network import CenterlineNetwork, extract_branches
from vesselforge.centerline.types import Branch
from vesselforge.errors import FurcationError, SplineError, TopologyError, UnsupportedTopologyError
from vesselforge.fitting.fit import fit_vessel
from vesselforge.fitting.types import FitConfig
from vesselforge.model.tube import tube_distance
from vesselforge.model.types import Apex, CrossSection, FurcationModel, ModelOptions
from vesselforge.spline.bspline import Spline4, greville_abscissae
from vesselforge.spline.frames import perpendicular
from vesselforge.spline.projector import CurveProjector
from vesselforge.utils.logger import get_logger

INSIDE_FRACTION = 1e-3
ROUNDING_FRACTION = 0.2


def junction_branches(
    net: CenterlineNetwork, junction: int, branches: Optional[Sequence[Branch]] = None
) -> Tuple[Branch, List[Branch]]:
    """Inlet branch and outlet branches (source order) of a junction."""
    branches = branches if branches is not None else extract_branches(net)
    outlets = [b for b in branches if b.inlet_junction == junction]
    if len(outlets) < 2:
        raise TopologyError(f"point {junction} is not a junction")
    inlet = [b for b in branches if b.outlet_junction == junction]
    if not inlet:
        raise UnsupportedTopologyError(f"junction {junction} has no inlet vessel")
    return inlet[0], outlets


def merged_centerline(net: CenterlineNetwork, inlet: Branch, outlet: Branch) -> np.ndarray:
    """``(m, 4)`` samples of the inlet followed by one outlet."""
    return net.xyzr(list(inlet.point_ids) + list(outlet.point_ids[1:]))


def _walk_direction(points: np.ndarray, distance: float) -> np.ndarray:
    """Unit vector from the first point to the first point at least ``distance`` away."""
    offsets = np.linalg.norm(points[:, :3] - points[0, :3], axis=1)
    far = np.nonzero(offsets >= distance)[0]
    target = points[far[0], :3] if len(far) else points[-1, :3]
    vector = target - points[0, :3]
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise TopologyError("branch has zero length")
    return vector / norm


def _plane(inlet_dir: np.ndarray, outlet_dirs: np.ndarray, tolerance: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Plane normal ``w`` and in-plane axes ``e1`` (along the inlet), ``e2 = w x e1``."""
    if len(outlet_dirs) == 2:
        w = np.cross(outlet_dirs[0], outlet_dirs[1])
        if np.linalg.norm(w) < 1e-9:
            w = np.cross(inlet_dir, outlet_dirs[0])
        if np.linalg.norm(w) < 1e-9:
            w = perpendicular(inlet_dir)
    else:
        _, _, vt = np.linalg.svd(outlet_dirs)
        w = vt[-1]
        residual = float(np.max(np.arcsin(np.clip(np.abs(outlet_dirs @ w), 0.0, 1.0))))
        if residual > tolerance:
            raise UnsupportedTopologyError(
                f"outlet directions leave the best-fit plane by {residual:.3f} rad (tolerance {tolerance})"
            )
    w = w / np.linalg.norm(w)
    if w[int(np.argmax(np.abs(w)))] < 0:
        w = -w
    e1 = inlet_dir - (inlet_dir @ w) * w
    if np.linalg.norm(e1) < 1e-9:
        e1 = outlet_dirs[0] - (outlet_dirs[0] @ w) * w
    e1 = e1 / np.linalg.norm(e1)
    return w, e1, np.cross(w, e1)


def _facing_points(
    small: Spline4, other: Spline4, other_projector: CurveProjector, us: np.ndarray, hint: np.ndarray
) -> np.ndarray:
    """Points of the small tube's surface facing the other centerline."""
    centers = small.position(us)
    radii = small.radius(us)
    tangents = small.tangent(us)
    v, _ = other_projector.project(centers)
    toward = other.position(v) - centers
    toward -= np.sum(toward * tangents, axis=1, keepdims=True) * tangents
    fallback = hint[None, :] - np.sum(hint[None, :] * tangents, axis=1, keepdims=True) * tangents
    norms = np.linalg.norm(toward, axis=1)
    degenerate = norms < 1e-9 * np.maximum(radii, 1e-12)
    toward[degenerate] = fallback[degenerate]
    toward /= np.linalg.norm(toward, axis=1, keepdims=True)
    return centers + radii[:, None] * toward


def find_apex(
    small: Spline4, other: Spline4, u_start: float, samples: int = 200
) -> Tuple[np.ndarray, float]:
    """First point where the small tube's facing surface leaves the other tube.

    The march starts at ``u_start`` and must see the facing point inside the
    other tube before the crossing counts.

    Raises
    ------
    FurcationError
        ``"no apex"`` when no inside-to-outside crossing exists.
    """
    projector = CurveProjector(other)
    hint = other.position(1.0) - small.position(1.0)
    if np.linalg.norm(hint) < 1e-12:
        hint = perpendicular(small.tangent(u_start))

    def depth(us: np.ndarray) -> np.ndarray:
        return tube_distance(other, _facing_points(small, other, projector, us, hint), projector)

    us = np.linspace(u_start, 1.0, samples)
    values = depth(us)
    threshold = -INSIDE_FRACTION * small.radius(u_start)
    inside = np.nonzero(values < threshold)[0]
    if not len(inside):
        raise FurcationError("no apex", "tubes never overlap downstream of the junction")
    after = np.nonzero(values[inside[0]:] >= 0.0)[0]
    if not len(after):
        raise FurcationError("no apex", "tubes never separate")
    i = inside[0] + after[0]
    u = brentq(lambda x: float(depth(np.array([x]))[0]), us[i - 1], us[i], xtol=1e-13)
    point = _facing_points(small, other, projector, np.array([u]), hint)[0]
    return point, float(u)


def _edit_radius(spline: Spline4, knots_u: Sequence[float], radii: Sequence[float]) -> Spline4:
    """Piecewise-linear radius between the given parameters, outside untouched."""
    control = np.array(spline.control_points)
    g = greville_abscissae(spline.n)
    inside = (g >= knots_u[0]) & (g <= knots_u[-1])
    control[inside, 3] = np.interp(g[inside], knots_u, radii)
    return Spline4(control)


def _sections(
    splines: List[Spline4], junction_point: np.ndarray, options: ModelOptions
) -> Tuple[List[Apex], List[float], List[float], List[float], List[float]]:
    """Apexes and the C0, AC and C parameters on every shape spline."""
    k = len(splines)
    u_junction = [s.project(junction_point)[0] for s in splines]
    apexes = []
    for i in range(k - 1):
        a, b = i, i + 1
        ra, rb = splines[a].radius(u_junction[a]), splines[b].radius(u_junction[b])
        small, other = (a, b) if ra <= rb else (b, a)
        point, _ = find_apex(splines[small], splines[other], u_junction[small], options.apex_samples)
        params = (splines[a].project(point)[0], splines[b].project(point)[0])
        apexes.append(Apex(point=point, pair=(a, b), params=params))

    u_apical = []
    for i in range(k):
        candidates = [a.params[a.pair.index(i)] for a in apexes if i in a.pair]
        u_apical.append(max(candidates))

    u_outlet = []
    for i, spline in enumerate(splines):
        r_apical = float(spline.radius(u_apical[i]))
        try:
            u_outlet.append(spline.length_to_u(u_apical[i], 2.0 * r_apical))
        except SplineError as e:
            raise FurcationError("apex beyond spline end", f"outlet {i}: {e}") from e

    u_inlet = []
    for i, spline in enumerate(splines):
        diameter = 2.0 * float(spline.radius(u_junction[i]))
        try:
            limit = spline.length_to_u(u_apical[i], -diameter)
        except SplineError:
            limit = 0.0
        u_inlet.append(min(u_junction[i], limit))
    return apexes, u_inlet, u_apical, u_outlet, u_junction


def _mean_section(sections: Sequence[CrossSection]) -> CrossSection:
    return CrossSection(
        np.mean([s.center for s in sections], axis=0),
        float(np.mean([s.radius for s in sections])),
        np.sum([s.normal for s in sections], axis=0),
    )


def build_nfurcation(
    net: CenterlineNetwork,
    junction: int,
    config: Optional[FitConfig] = None,
    options: Optional[ModelOptions] = None,
    branches: Optional[Sequence[Branch]] = None,
    logger: Optional[logging.Logger] = None,
) -> FurcationModel:
    """Estimate a planar furcation model with any number of outlets.

    Outlets are ordered by angle about the inlet direction in the best-fit
    plane of their directions; one apex is searched between every pair of
    neighbouring outlets.

    Raises
    ------
    FurcationError
        Named failure: ``"oriented model mismatch"``, ``"no apex"``,
        ``"apex beyond spline end"`` or ``"unsupported topology"``.
    """
    config = config or FitConfig()
    options = options or ModelOptions()
    logger = logger or get_logger("model")
    inlet, outlets = junction_branches(net, junction, branches)
    junction_point = np.asarray(net.point(junction).position, dtype=float)
    reach = 2.0 * net.point(junction).radius

    inlet_points = net.xyzr(inlet.point_ids)[::-1]
    inlet_dir = -_walk_direction(inlet_points, reach)
    outlet_dirs = np.array([_walk_direction(net.xyzr(b.point_ids), reach) for b in outlets])
    backwards = [b.index for b, d in zip(outlets, outlet_dirs) if d @ inlet_dir < 0]
    if backwards:
        raise FurcationError("oriented model mismatch", f"outlet branch(es) {backwards} point upstream")

    w, e1, e2 = _plane(inlet_dir, outlet_dirs, options.planarity_tolerance)
    angles = np.arctan2(outlet_dirs @ e2, outlet_dirs @ e1)
    order = [int(i) for i in np.argsort(angles, kind="stable")]
    outlets = [outlets[i] for i in order]

    splines = [fit_vessel(merged_centerline(net, inlet, b), config, logger=logger).spline for b in outlets]
    apexes, u_inlet, u_apical, u_outlet, u_junction = _sections(splines, junction_point, options)
    if options.linear_radius:
        edited = []
        for i, spline in enumerate(splines):
            r0 = float(np.mean([s.radius(u) for s, u in zip(splines, u_inlet)]))
            edited.append(
                _edit_radius(
                    spline,
                    [u_inlet[i], u_apical[i], u_outlet[i]],
                    [r0, float(spline.radius(u_apical[i])), float(spline.radius(u_outlet[i]))],
                )
            )
        splines = edited
        apexes, u_inlet, u_apical, u_outlet, u_junction = _sections(splines, junction_point, options)

    apical = [CrossSection.on_spline(s, u) for s, u in zip(splines, u_apical)]
    rounding = options.rounding_radius
    if rounding is None:
        rounding = ROUNDING_FRACTION * min(s.radius for s in apical)
    model = FurcationModel(
        junction=junction,
        inlet_branch=inlet.index,
        outlet_branches=[b.index for b in outlets],
        inlet=_mean_section([CrossSection.on_spline(s, u) for s, u in zip(splines, u_inlet)]),
        apical=apical,
        outlets=[CrossSection.on_spline(s, u) for s, u in zip(splines, u_outlet)],
        apexes=apexes,
        splines=splines,
        rounding_radius=float(rounding),
        plane_normal=w,
        inlet_params=[float(u) for u in u_inlet],
        apical_params=[float(u) for u in u_apical],
        outlet_params=[float(u) for u in u_outlet],
        junction_params=[float(u) for u in u_junction],
    )
    logger.debug("junction %d: %d outlets, %d apexes", junction, model.n_out, len(apexes))
    return model


def estimate_bifurcation(
    net: CenterlineNetwork,
    junction: int,
    config: Optional[FitConfig] = None,
    options: Optional[ModelOptions] = None,
    branches: Optional[Sequence[Branch]] = None,
    logger: Optional[logging.Logger] = None,
) -> FurcationModel:
    """Five-section bifurcation model of a junction with two outlets."""
    if len(net.children(junction)) != 2:
        raise TopologyError(f"junction {junction} has {len(net.children(junction))} outlets, expected 2")
    return build_nfurcation(net, junction, config, options, branches, logger)
