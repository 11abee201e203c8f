# -*- coding: utf-8 -*-
"""Triangulated target surfaces for radial projection."""

from pathlib import Path
from typing import Tuple, Union

import numpy as np
import trimesh

from vesselforge.errors import DeformError

HIT_EPS = 1e-9


class TargetSurface:
    """Triangle surface answering first-hit ray queries.

    Ray queries go through trimesh, whose triangle tree is an rtree index.
    """

    def __init__(self, mesh: trimesh.Trimesh) -> None:
        if not isinstance(mesh, trimesh.Trimesh) or len(mesh.faces) == 0:
            raise DeformError("target surface has no triangles")
        self.mesh = mesh

    @classmethod
    def load(cls, path: Union[str, Path]) -> "TargetSurface":
        """Read an OBJ or STL file (ASCII or binary)."""
        path = Path(path)
        if path.suffix.lower() not in (".obj", ".stl"):
            raise DeformError(f"unsupported target format {path.suffix!r}, expected .obj or .stl")
        try:
            mesh = trimesh.load(str(path), force="mesh", process=True)
        except Exception as e:  # noqa: BLE001
            raise DeformError(f"cannot read {path}: {e}") from e
        if isinstance(mesh, trimesh.Scene):
            if not mesh.geometry:
                raise DeformError(f"no geometry in {path}")
            mesh = trimesh.util.concatenate(mesh.dump())
        return cls(mesh)

    @classmethod
    def from_arrays(cls, vertices: np.ndarray, faces: np.ndarray) -> "TargetSurface":
        return cls(trimesh.Trimesh(vertices=np.asarray(vertices, float), faces=np.asarray(faces, np.int64), process=False))

    def first_hits(self, origins: np.ndarray, directions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Nearest intersection in front of each origin.

        Returns the hit points (origins where nothing is hit) and the hit
        mask. Hits behind or at the origin are ignored.
        """
        origins = np.atleast_2d(np.asarray(origins, dtype=float))
        directions = np.atleast_2d(np.asarray(directions, dtype=float))
        directions = directions / np.linalg.norm(directions, axis=1, keepdims=True)
        points = origins.copy()
        hit = np.zeros(len(origins), dtype=bool)
        if not len(origins):
            return points, hit
        locations, rays, _ = self.mesh.ray.intersects_location(origins, directions, multiple_hits=True)
        if not len(locations):
            return points, hit
        t = np.einsum("ij,ij->i", locations - origins[rays], directions[rays])
        front = t > HIT_EPS
        locations, rays, t = locations[front], rays[front], t[front]
        order = np.lexsort((t, rays))
        rays_sorted = rays[order]
        _, first = np.unique(rays_sorted, return_index=True)
        chosen = order[first]
        points[rays[chosen]] = locations[chosen]
        hit[rays[chosen]] = True
        return points, hit
