# -*- coding: utf-8 -*-
"""Rolling-circle smoothing of the mesh lines that cross a furcation apex."""

import logging
import warnings
from typing import List, Optional, Tuple

import numpy as np

from vesselforge.mesher.separation import SeparationGeometry
from vesselforge.mesher.surface import FURCATION, StructuredSurfaceMesh, SurfacePatch
from vesselforge.utils.logger import get_logger


def _left_normal(u: np.ndarray) -> np.ndarray:
    return np.array([-u[1], u[0]])


def fillet_polyline_2d(points: np.ndarray, apex: int, R: float) -> Optional[np.ndarray]:
    """Round the corner of a 2D polyline at vertex ``apex`` with a circle of radius ``R``.

    Segment pairs on either side of the apex are tried nearest first; the
    first pair admitting a circle tangent to both, on the side the curve
    turns towards, with both contact points inside their segments wins.
    Vertices strictly between the contact points are moved onto the arc,
    keeping their arc-length fractions. Returns None when no pair fits.
    """
    points = np.asarray(points, dtype=float)
    if R <= 0.0:
        return points.copy()
    m = len(points)
    if not 0 < apex < m - 1:
        return None
    vectors = np.diff(points, axis=0)
    lengths = np.linalg.norm(vectors, axis=1)
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    pairs = [(i, j) for i in range(apex) for j in range(apex, m - 1)]
    pairs.sort(key=lambda p: (apex - 1 - p[0]) + (p[1] - apex))

    for i, j in pairs:
        if lengths[i] == 0.0 or lengths[j] == 0.0:
            continue
        u1, u2 = vectors[i] / lengths[i], vectors[j] / lengths[j]
        turn = u1[0] * u2[1] - u1[1] * u2[0]
        if abs(turn) < 1e-12:
            continue
        sign = np.sign(turn)
        n1, n2 = sign * _left_normal(u1), sign * _left_normal(u2)
        system = np.array([n1, n2])
        rhs = np.array([R + points[i] @ n1, R + points[j] @ n2])
        try:
            center = np.linalg.solve(system, rhs)
        except np.linalg.LinAlgError:
            continue
        t1, t2 = center - R * n1, center - R * n2
        f1 = (t1 - points[i]) @ u1 / lengths[i]
        f2 = (t2 - points[j]) @ u2 / lengths[j]
        if not (0.0 <= f1 <= 1.0 and 0.0 <= f2 <= 1.0):
            continue

        s1 = cumulative[i] + f1 * lengths[i]
        s2 = cumulative[j] + f2 * lengths[j]
        a1 = np.arctan2(*(t1 - center)[::-1])
        a2 = np.arctan2(*(t2 - center)[::-1])
        sweep = sign * np.mod(sign * (a2 - a1), 2.0 * np.pi)
        out = points.copy()
        for q in range(i + 1, j + 1):
            fraction = (cumulative[q] - s1) / (s2 - s1)
            angle = a1 + fraction * sweep
            out[q] = center + R * np.array([np.cos(angle), np.sin(angle)])
        return out
    return None


def _patch(mesh: StructuredSurfaceMesh, junction: int, role) -> SurfacePatch:
    for patch in mesh.patches:
        if patch.kind == FURCATION and patch.label == junction and patch.role == role:
            return patch
    raise KeyError(f"no patch for junction {junction}, role {role}")


def apex_polylines(mesh: StructuredSurfaceMesh, sep: SeparationGeometry) -> List[Tuple[int, int, np.ndarray, int]]:
    """Node-id polylines crossing each apex arc, one per inner arc node.

    Each entry is ``(arc index, arc node, node ids, position of the arc
    node in the ids)``. A polyline runs from the end section of outlet
    ``h - 1`` up its trajectory to the arc, then down outlet ``h``.
    """
    N = mesh.N
    lines = []
    for h in range(1, len(sep.arcs) - 1):
        before = _patch(mesh, sep.junction, h - 1)
        after = _patch(mesh, sep.junction, h)
        for j in range(1, N // 2):
            up = [section.node_ids[j] for section in before.sections][::-1]
            down = [section.node_ids[N - j] for section in after.sections]
            if up[-1] != down[0]:
                raise KeyError(f"apex arc {h} node {j} is not shared")
            ids = np.array(up + down[1:], dtype=np.int64)
            lines.append((h, j, ids, len(up) - 1))
    return lines


def smooth_apex(
    mesh: StructuredSurfaceMesh,
    sep: SeparationGeometry,
    R: float,
    logger: Optional[logging.Logger] = None,
) -> StructuredSurfaceMesh:
    """Fillet every mesh line crossing an apex with a circle of radius ``R``.

    Each line is flattened onto the plane spanned by the separation plane
    normal and the outward surface direction at its arc node, rounded in
    2D, and the in-plane displacement is applied back in 3D. Lines that
    admit no fillet, or whose fillet reaches a pinned node, are left alone
    with a warning.
    """
    logger = logger or get_logger("mesher")
    out = mesh.copy()
    if R <= 0.0:
        return out
    x = out.nodes.copy()
    skipped = 0
    for h, j, ids, apex in apex_polylines(out, sep):
        arc = out.arcs[("arc", sep.junction, h)]
        n_h = arc.plane_normal
        outward = x[ids[apex]] - arc.center
        outward = outward - (outward @ n_h) * n_h
        outward = outward / np.linalg.norm(outward)
        local = x[ids] - arc.center
        flat = np.column_stack([local @ n_h, local @ outward])
        rounded = fillet_polyline_2d(flat, apex, R)
        if rounded is None:
            skipped += 1
            continue
        shift = rounded - flat
        moved = np.nonzero(np.linalg.norm(shift, axis=1) > 0.0)[0]
        if any(int(ids[q]) in out.pinned for q in moved):
            skipped += 1
            continue
        x[ids] += shift[:, :1] * n_h + shift[:, 1:] * outward
    if skipped:
        message = f"junction {sep.junction}: apex smoothing skipped on {skipped} line(s), radius {R:g} too large"
        warnings.warn(message)
        logger.warning(message)
    out.nodes = x
    return out
