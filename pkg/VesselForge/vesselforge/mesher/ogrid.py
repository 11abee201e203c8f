# -*- coding: utf-8 -*-
"""O-grid hexahedral volume built from a structured surface.

Every section of the surface receives a copy of the O-grid pattern mapped
onto its boundary nodes; patterns of consecutive sections are joined into
hexahedra. Separation loops are split along their CT0-CT1 diameter and each
half pattern is keyed by its separation arc, so the patches meeting at a
separation plane share the same half grid node for node.
"""

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional

import numpy as np

from vesselforge.errors import ConfigError, ConsistencyError
from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.surface import FURCATION, MeshSection, StructuredSurfaceMesh
from vesselforge.mesher.template import OGridTemplate, template_for, transfinite

LAYER_NAMES = ("boundary", "intermediate", "core")


@dataclass
class HexMesh:
    """Hexahedra in VTK ordering with per-cell tags.

    ``branch_kind`` is 0 for vessel cells and 1 for furcation cells, so
    ``branch_id`` holds a branch index or a junction id respectively.
    """

    vertices: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    hexes: np.ndarray = field(default_factory=lambda: np.zeros((0, 8), dtype=np.int64))
    branch_id: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    branch_kind: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8))
    layer: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8))

    @property
    def cell_count(self) -> int:
        return len(self.hexes)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def faces(self) -> np.ndarray:
        """``(6 H, 4)`` faces of every hex, oriented outward."""
        order = np.array([[0, 3, 2, 1], [4, 5, 6, 7], [0, 1, 5, 4], [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]])
        return self.hexes[:, order].reshape(-1, 4)

    def boundary_faces(self) -> np.ndarray:
        """Faces used by exactly one hex."""
        faces = self.faces()
        if not len(faces):
            return faces
        keys = np.sort(faces, axis=1)
        _, inverse, counts = np.unique(keys, axis=0, return_inverse=True, return_counts=True)
        return faces[counts[inverse.ravel()] == 1]

    def branch_labels(self) -> List[str]:
        """``"vessel:<id>"`` or ``"furcation:<id>"`` per cell."""
        names = np.where(self.branch_kind == 1, "furcation", "vessel")
        return [f"{n}:{i}" for n, i in zip(names, self.branch_id)]


class _VolumeBuilder:
    def __init__(self, surface: StructuredSurfaceMesh, template: OGridTemplate) -> None:
        self.surface = surface
        self.template = template
        self.positions: List[np.ndarray] = [surface.nodes]
        self.ids: Dict[Hashable, int] = {}
        self.count = surface.node_count
        self.patterns: Dict[Hashable, np.ndarray] = {}
        _, self.angle = template.polar
        self.radius = np.linalg.norm(template.coords, axis=1)
        self.upper = template.coords[:, 1] > 1e-12
        self.axis = template.axis_mask()
        self.mirror = template.mirror() if template.N % 8 == 0 else None

    def _vertex(self, key: Hashable, position: np.ndarray) -> int:
        if key not in self.ids:
            self.ids[key] = self.count
            self.positions.append(position[None, :])
            self.count += 1
        return self.ids[key]

    def _layout(self, section: MeshSection) -> np.ndarray:
        """Positions of every template node of a section.

        The core boundary follows the wall directions, the core block is
        filled by transfinite interpolation and the rings are blended
        between core boundary and wall.
        """
        t = self.template
        N, L = t.N, t.layers
        boundary = self.surface.nodes[section.node_ids] - section.center
        kappa = self.angle * N / (2.0 * np.pi)
        i0 = np.floor(kappa).astype(np.int64) % N
        frac = (kappa - np.floor(kappa))[:, None]
        direction = (1.0 - frac) * boundary[i0] + frac * boundary[(i0 + 1) % N]
        out = section.center + self.radius[:, None] * direction
        grid = t.grid
        if section.halves is None:
            out[grid] = transfinite(out[grid])
        else:
            # axis row stays radial, each half block is filled on its own
            h = t.m // 2
            out[grid[:, : h + 1]] = transfinite(out[grid[:, : h + 1]])
            out[grid[:, h:]] = transfinite(out[grid[:, h:]])
        core = out[L * N : (L + 1) * N]
        wall = section.center + boundary
        for l in range(L):
            out[l * N : (l + 1) * N] = core + t.tau[l] * (wall - core)
        return out

    def pattern(self, section: MeshSection) -> np.ndarray:
        """Global vertex id of every template node of a section."""
        if section.key in self.patterns:
            return self.patterns[section.key]
        t = self.template
        positions = self._layout(section)
        ids = np.empty(t.node_count, dtype=np.int64)
        ids[: t.N] = section.node_ids
        if section.halves is None:
            for node in range(t.N, t.node_count):
                ids[node] = self._vertex(("pattern", section.key, node), positions[node])
        else:
            if self.mirror is None:
                raise ConfigError(f"split sections need N divisible by 8, got {t.N}")
            right, left = section.halves
            junction = right[1]
            for node in range(t.N, t.node_count):
                if self.axis[node]:
                    key = ("axis", junction, node)
                elif self.upper[node]:
                    key = ("half", right, node)
                else:
                    key = ("half", left, int(self.mirror[node]))
                ids[node] = self._vertex(key, positions[node])
        self.patterns[section.key] = ids
        return ids

    def vertices(self) -> np.ndarray:
        return np.vstack(self.positions)


def build_ogrid_volume(surface: StructuredSurfaceMesh, params: Optional[MeshParams] = None) -> HexMesh:
    """Fill a structured surface with O-grid hexahedra.

    Vertex ids start with the surface node ids, so the wall faces of the
    volume are exactly the surface quads.

    Raises
    ------
    ConsistencyError
        The surface and the parameters disagree on ``N``, or two hexes
        claim the same oriented face.
    ConfigError
        The surface has separation loops and ``N`` is not a multiple of 8.
    """
    params = params or MeshParams(N=surface.N)
    if params.N != surface.N:
        raise ConsistencyError(f"surface has N={surface.N}, parameters N={params.N}")
    template = template_for(params)
    builder = _VolumeBuilder(surface, template)
    cells = template.cells

    hexes, branch_ids, kinds, layers = [], [], [], []
    for patch in surface.patches:
        kind = 1 if patch.kind == FURCATION else 0
        patterns = [builder.pattern(section) for section in patch.sections]
        for a, b in zip(patterns[:-1], patterns[1:]):
            hexes.append(np.hstack([a[cells], b[cells]]))
            branch_ids.append(np.full(len(cells), patch.label, dtype=np.int64))
            kinds.append(np.full(len(cells), kind, dtype=np.int8))
            layers.append(template.cell_classes)

    if not hexes:
        return HexMesh(vertices=builder.vertices())
    mesh = HexMesh(
        vertices=builder.vertices(),
        hexes=np.vstack(hexes),
        branch_id=np.concatenate(branch_ids),
        branch_kind=np.concatenate(kinds),
        layer=np.concatenate(layers).astype(np.int8),
    )
    check_conformity(mesh)
    return mesh


def check_conformity(mesh: HexMesh) -> None:
    """Every face is used at most twice, and never twice with the same orientation."""
    faces = mesh.faces()
    keys = np.sort(faces, axis=1)
    _, counts = np.unique(keys, axis=0, return_counts=True)
    if np.any(counts > 2):
        raise ConsistencyError(f"{int(np.sum(counts > 2))} faces shared by more than two hexes")
    start = np.argmin(faces, axis=1)
    rolled = np.take_along_axis(faces, (start[:, None] + np.arange(4)) % 4, axis=1)
    _, oriented = np.unique(rolled, axis=0, return_counts=True)
    if np.any(oriented > 1):
        raise ConsistencyError("two hexes share a face with the same orientation")
