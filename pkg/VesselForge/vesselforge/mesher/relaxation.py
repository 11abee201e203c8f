# -*- coding: utf-8 -*-
"""Laplacian relaxation of structured surfaces with back-projection."""

import logging
from typing import Dict, Optional, Union

import numpy as np
from scipy import sparse

from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.surface import StructuredSurfaceMesh
from vesselforge.model.tube import TubeSurface
from vesselforge.model.types import FurcationModel
from vesselforge.spline.bspline import Spline4
from vesselforge.utils.logger import get_logger

SurfaceSource = Union[FurcationModel, Spline4, TubeSurface]


def as_tube_surface(source: SurfaceSource) -> TubeSurface:
    if isinstance(source, TubeSurface):
        return source
    if isinstance(source, FurcationModel):
        return TubeSurface(source.splines)
    return TubeSurface([source])


def neighbour_average(mesh: StructuredSurfaceMesh) -> sparse.csr_matrix:
    """Row-normalised adjacency of the quad edges."""
    edges = mesh.edges()
    n = mesh.node_count
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    adjacency = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    degree = np.asarray(adjacency.sum(axis=1)).ravel()
    degree[degree == 0] = 1.0
    return sparse.diags(1.0 / degree) @ adjacency


def _section_frames(mesh: StructuredSurfaceMesh) -> Dict[int, int]:
    """First section of every node, as an index into ``mesh.iter_sections`` order."""
    owner: Dict[int, int] = {}
    for index, (_, _, section) in enumerate(mesh.iter_sections()):
        for node in section.node_ids:
            owner.setdefault(int(node), index)
    return owner


def relax_surface(
    mesh: StructuredSurfaceMesh,
    model: SurfaceSource,
    params: Optional[MeshParams] = None,
    logger: Optional[logging.Logger] = None,
) -> StructuredSurfaceMesh:
    """Relax the free nodes of a surface mesh and keep them on the model.

    Every iteration moves each free node ``relax_factor`` of the way to the
    mean of its quad neighbours, then casts it back onto the surface along
    the ray from its section centre, within the section plane. Separation
    arc nodes stay in their half plane and are cast from the arc centre.
    Pinned nodes do not move; connectivity is unchanged.
    """
    params = params or MeshParams()
    logger = logger or get_logger("mesher")
    out = mesh.copy()
    if params.relax_iters == 0 or out.node_count == 0:
        return out
    surface = as_tube_surface(model)
    average = neighbour_average(out)

    arc_nodes, arc_centers, arc_normals = [], [], []
    for arc in out.arcs.values():
        inner = arc.node_ids[1:-1]
        arc_nodes.append(inner)
        arc_centers.append(np.repeat(arc.center[None, :], len(inner), axis=0))
        arc_normals.append(np.repeat(arc.plane_normal[None, :], len(inner), axis=0))
    arc_nodes = np.concatenate(arc_nodes) if arc_nodes else np.zeros(0, dtype=np.int64)
    arc_set = set(arc_nodes.tolist())

    sections = [section for _, _, section in out.iter_sections()]
    owner = _section_frames(out)
    free = np.array(
        [i for i in range(out.node_count) if i not in out.pinned and i not in arc_set and i in owner],
        dtype=np.int64,
    )
    centers = np.array([sections[owner[i]].center for i in free]).reshape(-1, 3)
    normals = np.array([sections[owner[i]].normal for i in free]).reshape(-1, 3)
    if len(arc_nodes):
        arc_centers = np.vstack(arc_centers)
        arc_normals = np.vstack(arc_normals)

    x = out.nodes.copy()
    for iteration in range(params.relax_iters):
        target = x + params.relax_factor * (average @ x - x)
        previous = x.copy()
        if len(free):
            d = target[free] - centers
            d -= np.sum(d * normals, axis=1, keepdims=True) * normals
            hits, ok = surface.ray_exit(centers, d)
            x[free[ok]] = hits[ok]
        if len(arc_nodes):
            d = target[arc_nodes] - arc_centers
            d -= np.sum(d * arc_normals, axis=1, keepdims=True) * arc_normals
            hits, ok = surface.ray_exit(arc_centers, d)
            x[arc_nodes[ok]] = hits[ok]
        logger.debug("relaxation %d: max move %.3e", iteration + 1, float(np.max(np.abs(x - previous))))
    out.nodes = x
    return out
