# -*- coding: utf-8 -*-
"""Radial projection of surface meshes onto a target surface."""

import logging
from typing import Optional, Tuple

import numpy as np

from vesselforge.deform.target import TargetSurface
from vesselforge.errors import DeformError
from vesselforge.mesher.ogrid import HexMesh, build_ogrid_volume
from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.surface import StructuredSurfaceMesh
from vesselforge.utils.logger import get_logger

MISS_TOLERANCE = 0.01


def node_centers(mesh: StructuredSurfaceMesh) -> np.ndarray:
    """Centre of the first section containing each node."""
    centers = np.full((mesh.node_count, 3), np.nan)
    for _, _, section in mesh.iter_sections():
        fresh = np.isnan(centers[section.node_ids, 0])
        centers[section.node_ids[fresh]] = section.center
    return centers


def project_nodes(mesh: StructuredSurfaceMesh, target: TargetSurface) -> Tuple[np.ndarray, np.ndarray]:
    """First hits of the rays from each node's section centre through the node."""
    centers = node_centers(mesh)
    nodes = mesh.nodes
    valid = ~np.isnan(centers[:, 0])
    points, hit = nodes.copy(), np.zeros(mesh.node_count, dtype=bool)
    if valid.any():
        found, ok = target.first_hits(centers[valid], nodes[valid] - centers[valid])
        index = np.nonzero(valid)[0]
        points[index[ok]] = found[ok]
        hit[index[ok]] = True
    return points, hit


def project_surface_nodes(
    mesh: StructuredSurfaceMesh,
    target: TargetSurface,
    miss_tolerance: float = MISS_TOLERANCE,
    logger: Optional[logging.Logger] = None,
) -> StructuredSurfaceMesh:
    """Move every node radially onto ``target``; connectivity is unchanged.

    Nodes whose ray misses the target keep their position.

    Raises
    ------
    DeformError
        More than ``miss_tolerance`` of the nodes missed.
    """
    logger = logger or get_logger("deform")
    points, hit = project_nodes(mesh, target)
    misses = int(np.sum(~hit))
    if mesh.node_count and misses / mesh.node_count > miss_tolerance:
        raise DeformError(f"{misses} of {mesh.node_count} nodes miss the target surface")
    if misses:
        logger.warning("deform: %d node(s) missed the target and were kept", misses)
    out = mesh.copy()
    out.nodes = points
    return out


def rebuild_volume_after_deform(surface: StructuredSurfaceMesh, params: Optional[MeshParams] = None) -> HexMesh:
    """O-grid volume of a deformed surface: same combinatorics, new geometry."""
    return build_ogrid_volume(surface, params)
