# -*- coding: utf-8 -*-
"""Structured surface of a furcation: one swept patch per branch."""

from typing import Hashable, List, Optional, Tuple

import numpy as np

from vesselforge.errors import ConfigError, MeshingError
from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.separation import SeparationGeometry, decompose_furcation
from vesselforge.mesher.surface import FURCATION, SeparationArc, StructuredSurfaceMesh, SurfacePatch
from vesselforge.mesher.vessel_surface import ring, section_count
from vesselforge.model.tube import TubeSurface
from vesselforge.model.types import CrossSection, FurcationModel

INLET = "inlet"
PATH_SAMPLES = 65


def hermite(p0: np.ndarray, p1: np.ndarray, m0: np.ndarray, m1: np.ndarray, s: np.ndarray, order: int = 0) -> np.ndarray:
    """Cubic Hermite curve(s) at ``s``; ``p``/``m`` broadcast over trailing axes."""
    s = np.asarray(s, dtype=float)[(...,) + (None,) * (np.ndim(p0))]
    if order == 0:
        h = (2 * s**3 - 3 * s**2 + 1, s**3 - 2 * s**2 + s, -2 * s**3 + 3 * s**2, s**3 - s**2)
    else:
        h = (6 * s**2 - 6 * s, 3 * s**2 - 4 * s + 1, -6 * s**2 + 6 * s, 3 * s**2 - 2 * s)
    return h[0] * p0 + h[1] * m0 + h[2] * p1 + h[3] * m1


def _angle(vector: np.ndarray, b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    return np.arctan2(vector @ b2, vector @ b1)


def sector_normal(left: np.ndarray, right: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Unit bisector of the sector swept counterclockwise (about ``w``) from ``left`` to ``right``."""
    b2 = np.cross(w, left)
    span = np.mod(_angle(right, left, b2), 2.0 * np.pi)
    middle = 0.5 * span
    return np.cos(middle) * left + np.sin(middle) * b2


def loop_node_keys(junction: int, right: int, left: int, N: int) -> List[Hashable]:
    """Keys of a separation loop: CT0, the right arc, CT1, the left arc reversed."""
    half = N // 2
    keys: List[Hashable] = []
    for k in range(N):
        if k == 0:
            keys.append(("ct", junction, 0))
        elif k == half:
            keys.append(("ct", junction, 1))
        elif k < half:
            keys.append(("arc", junction, right, k))
        else:
            keys.append(("arc", junction, left, N - k))
    return keys


def loop_positions(sep: SeparationGeometry, right: int, left: int, N: int) -> np.ndarray:
    half = N // 2
    return np.vstack([sep.arcs[right][:half], sep.arcs[left][half:0:-1]])


def aligned_end_ring(section: CrossSection, targets: np.ndarray, N: int) -> np.ndarray:
    """End circle whose nodes ``0, N/4, N/2, 3N/4`` face the four targets.

    The node-0 angle is the circular mean of the per-target phase estimates.
    """
    c, n = section.center, section.normal
    u = targets[0] - c
    u = u - (u @ n) * n
    u = u / np.linalg.norm(u)
    v = np.cross(n, u)
    phases = _angle(targets - c, u, v) - 0.5 * np.pi * np.arange(4)
    phase = np.arctan2(np.mean(np.sin(phases)), np.mean(np.cos(phases)))
    reference = np.cos(phase) * u + np.sin(phase) * v
    return ring(c, section.radius, reference, n, N)


def _monotone(points: np.ndarray, center: np.ndarray, normal: np.ndarray) -> bool:
    """Whether the nodes turn counterclockwise about ``normal`` in strictly increasing angle."""
    u = points[0] - center
    u = u - (u @ normal) * normal
    if np.linalg.norm(u) < 1e-12:
        return False
    u = u / np.linalg.norm(u)
    angles = _angle(points - center, u, np.cross(normal, u))
    steps = np.mod(np.roll(angles, -1) - angles, 2.0 * np.pi)
    return bool(np.all((steps > 0.0) & (steps < np.pi)))


def project_section(
    surface: TubeSurface, center: np.ndarray, tangent: np.ndarray, points: np.ndarray
) -> np.ndarray:
    """Cast ``points`` onto the surface from ``center``, perpendicular to ``tangent``."""
    directions = points - center
    flat = directions - np.outer(directions @ tangent, tangent)
    keep = np.linalg.norm(flat, axis=1) > 1e-9 * np.linalg.norm(directions, axis=1)
    directions[keep] = flat[keep]
    hits, ok = surface.ray_exit(center[None, :], directions)
    if not ok.all():
        raise MeshingError("projection failure", f"{int((~ok).sum())} nodes miss the surface")
    return hits


def _sweep(
    mesh: StructuredSurfaceMesh,
    patch: SurfacePatch,
    patch_index: int,
    surface: TubeSurface,
    start: Tuple[Hashable, List[Hashable], np.ndarray, np.ndarray, np.ndarray],
    end: Tuple[Hashable, List[Hashable], np.ndarray, np.ndarray, np.ndarray],
    radius: float,
    params: MeshParams,
    halves: Tuple[Optional[tuple], Optional[tuple]],
) -> None:
    """Add the sections of one patch from ``start`` to ``end``.

    Each end is ``(section key, node keys, positions, center, normal)``.
    """
    key0, keys0, pos0, c0, n0 = start
    key1, keys1, pos1, c1, n1 = end
    chord = float(np.linalg.norm(c1 - c0))
    m0, m1 = chord * n0, chord * n1
    path = hermite(c0, c1, m0, m1, np.linspace(0.0, 1.0, PATH_SAMPLES))
    length = float(np.sum(np.linalg.norm(np.diff(path, axis=0), axis=1)))
    count = section_count(length, radius, params.d)
    s_values = np.linspace(0.0, 1.0, count)
    label = patch.role

    mesh.add_section(patch, key0, keys0, pos0, c0, n0, halves[0])
    for s_index in range(1, count - 1):
        s = s_values[s_index]
        center = hermite(c0, c1, m0, m1, s)
        tangent = hermite(c0, c1, m0, m1, s, order=1)
        tangent = tangent / np.linalg.norm(tangent)
        if params.init_mode == "linear":
            initial = (1.0 - s) * pos0 + s * pos1
        else:
            initial = hermite(pos0, pos1, chord * n0, chord * n1, s)
        points = project_section(surface, center, tangent, initial)
        if not _monotone(points, center, tangent):
            mesh.flags.append((patch_index, s_index))
        node_keys = [("fnode", patch.label, label, s_index, k) for k in range(mesh.N)]
        mesh.add_section(patch, ("fsec", patch.label, label, s_index), node_keys, points, center, tangent)
    mesh.add_section(patch, key1, keys1, pos1, c1, n1, halves[1])


def mesh_furcation_surface(
    model: FurcationModel, sep: Optional[SeparationGeometry] = None, params: Optional[MeshParams] = None
) -> StructuredSurfaceMesh:
    """Mesh a furcation as ``n + 1`` patches glued along the separation arcs.

    The inlet patch runs from the inlet section to the separation loop, each
    outlet patch from the loop to its outlet section. Loop nodes are the arc
    nodes, so neighbouring patches share them; end sections and CT nodes
    are pinned.

    Raises
    ------
    ConfigError
        ``N`` is not a multiple of 4.
    MeshingError
        A trajectory node cannot be projected onto the surface.
    """
    params = params or MeshParams()
    N, half = params.N, params.N // 2
    if N % 4:
        raise ConfigError(f"furcation meshing needs N divisible by 4, got {N}")
    sep = sep or decompose_furcation(model, params)
    J, w = model.junction, sep.plane_normal
    surface = sep.surface or TubeSurface(model.splines)
    mesh = StructuredSurfaceMesh(N)

    for h, points in enumerate(sep.arcs):
        keys = [("ct", J, 0)] + [("arc", J, h, j) for j in range(1, half)] + [("ct", J, 1)]
        ids = np.array([mesh.add_node(k, p) for k, p in zip(keys, points)], dtype=np.int64)
        d = sep.arc_directions[h]
        normal = np.cross(w, d)
        mesh.arcs[("arc", J, h)] = SeparationArc(("arc", J, h), J, sep.center, normal / np.linalg.norm(normal), d, ids)

    roles: List = [INLET] + list(range(model.n_out))
    for index, role in enumerate(roles):
        if role == INLET:
            right, left = sep.arc_for_inlet()
            section = model.inlet
            loop_normal = -sector_normal(sep.arc_directions[right], sep.arc_directions[left], w)
        else:
            right, left = sep.arc_for_outlet(role)
            section = model.outlets[role]
            loop_normal = sector_normal(sep.arc_directions[left], sep.arc_directions[right], w)

        loop_pos = loop_positions(sep, right, left, N)
        loop = (("loop", J, role), loop_node_keys(J, right, left, N), loop_pos, sep.center, loop_normal)
        targets = np.array([sep.arcs[right][0], sep.arcs[right][half // 2], sep.arcs[right][half], sep.arcs[left][half // 2]])
        end_pos = aligned_end_ring(section, targets, N)
        end = (("fend", J, role), [("fend", J, role, k) for k in range(N)], end_pos, section.center, section.normal)
        halves = (("arc", J, right), ("arc", J, left))

        patch = SurfacePatch(label=J, kind=FURCATION, role=role)
        mesh.patches.append(patch)
        if role == INLET:
            _sweep(mesh, patch, index, surface, end, loop, section.radius, params, (None, halves))
        else:
            _sweep(mesh, patch, index, surface, loop, end, section.radius, params, (halves, None))
        end_section = patch.sections[0] if role == INLET else patch.sections[-1]
        mesh.pinned.update(end_section.node_ids.tolist())

    mesh.pinned.update([mesh.node_id(("ct", J, 0)), mesh.node_id(("ct", J, 1))])
    return mesh
