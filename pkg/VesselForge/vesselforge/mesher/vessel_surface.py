# -*- coding: utf-8 -*-
"""Swept vessel surfaces."""

from typing import Hashable, Optional, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from vesselforge.errors import FoldOverError
from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.surface import VESSEL, SectionRef, StructuredSurfaceMesh, SurfacePatch
from vesselforge.spline.bspline import Spline4, arc_length_table
from vesselforge.spline.frames import perpendicular, rotation_minimizing_frames, signed_angle

DENSE_SAMPLES = 2001


def section_count(length: float, mean_radius: float, d: float) -> int:
    """Sections spaced ``d * mean_radius`` apart, at least two."""
    return max(2, int(round(length / (d * mean_radius))) + 1)


def uniform_parameters(spline: Spline4, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Parameters at equal arc-length steps, and their arc lengths."""
    u, s = arc_length_table(spline)
    targets = np.linspace(0.0, s[-1], count)
    params = np.interp(targets, s, u)
    params[0], params[-1] = 0.0, 1.0
    return params, targets


def check_fold_over(spline: Spline4, label: Hashable = None) -> float:
    """Largest ``curvature * radius`` along the spline.

    Raises
    ------
    FoldOverError
        When it reaches 1: neighbouring sections would intersect.
    """
    u = np.linspace(0.0, 1.0, DENSE_SAMPLES)
    value = float(np.max(spline.curvature(u) * spline.radius(u)))
    if value >= 1.0:
        raise FoldOverError(f"vessel {label}: curvature * radius reaches {value:.3f}")
    return value


def ring(center: np.ndarray, radius: float, reference: np.ndarray, normal: np.ndarray, N: int) -> np.ndarray:
    """``N`` points on a circle, node 0 along ``reference``, counterclockwise about ``normal``."""
    phi = 2.0 * np.pi * np.arange(N) / N
    binormal = np.cross(normal, reference)
    return center + radius * (np.cos(phi)[:, None] * reference + np.sin(phi)[:, None] * binormal)


def _reference_towards(section: SectionRef, tangent: np.ndarray) -> np.ndarray:
    vector = section.positions[0] - section.center
    vector = vector - (vector @ tangent) * tangent
    return vector / np.linalg.norm(vector)


def mesh_vessel_surface(
    spline: Spline4,
    params: Optional[MeshParams] = None,
    end_alignment: Optional[SectionRef] = None,
    start_alignment: Optional[SectionRef] = None,
    label: int = 0,
) -> StructuredSurfaceMesh:
    """Sweep ``N``-node circles along a vessel model.

    Frames follow rotation-minimizing transport. With ``end_alignment`` the
    remaining twist to the given end section is spread linearly along the
    arc length and that section's nodes are reused; ``start_alignment``
    fixes the first section the same way.

    Raises
    ------
    FoldOverError
        ``curvature * radius >= 1`` somewhere along the vessel.
    """
    params = params or MeshParams()
    N = params.N
    check_fold_over(spline, label)
    table_u, table_s = arc_length_table(spline)
    length = float(table_s[-1])
    mean_radius = float(np.mean(spline.radius(table_u)))
    count = section_count(length, mean_radius, params.d)
    us, arc = uniform_parameters(spline, count)

    centers = spline.position(us)
    radii = spline.radius(us)
    tangents = spline.tangent(us)
    if start_alignment is not None:
        reference = _reference_towards(start_alignment, tangents[0])
    else:
        reference = perpendicular(tangents[0])
    frames = rotation_minimizing_frames(centers, tangents, reference)
    if end_alignment is not None:
        target = _reference_towards(end_alignment, tangents[-1])
        mismatch = signed_angle(frames[-1], target, tangents[-1])
        for i in range(1, count):
            angle = mismatch * arc[i] / length
            frames[i] = Rotation.from_rotvec(angle * tangents[i]).apply(frames[i])

    mesh = StructuredSurfaceMesh(N)
    patch = SurfacePatch(label=label, kind=VESSEL)
    mesh.patches.append(patch)
    for s in range(count):
        key = ("vsec", label, s)
        if s == 0 and start_alignment is not None:
            ref = start_alignment
            mesh.add_section(patch, ref.key, ref.node_keys, ref.positions, ref.center, ref.normal)
            continue
        if s == count - 1 and end_alignment is not None:
            ref = end_alignment
            mesh.add_section(patch, ref.key, ref.node_keys, ref.positions, ref.center, ref.normal)
            continue
        positions = ring(centers[s], radii[s], frames[s], tangents[s], N)
        node_keys = [("vnode", label, s, k) for k in range(N)]
        mesh.add_section(patch, key, node_keys, positions, centers[s], tangents[s])
    mesh.pinned.update(patch.sections[0].node_ids.tolist())
    mesh.pinned.update(patch.sections[-1].node_ids.tolist())
    return mesh
