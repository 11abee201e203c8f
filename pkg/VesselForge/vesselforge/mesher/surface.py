# -*- coding: utf-8 -*-
"""Structured quad surface meshes made of swept sections."""

from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from vesselforge.errors import ConsistencyError

VESSEL, FURCATION = "vessel", "furcation"


@dataclass
class MeshSection:
    """One cross section of ``N`` node ids, counterclockwise about ``normal``.

    ``key`` identifies the section's volume pattern; sections shared by two
    meshes carry the same key. A separation loop lists the keys of its two
    half arcs in ``halves`` as ``(right, left)``: the right arc holds nodes
    ``0..N/2``, the left arc the remaining ones in reverse.
    """

    key: Hashable
    node_ids: np.ndarray
    center: np.ndarray
    normal: np.ndarray
    halves: Optional[Tuple[Hashable, Hashable]] = None


@dataclass
class SurfacePatch:
    """Sections swept in flow order; ``label`` is a branch or junction id."""

    label: int
    kind: str
    sections: List[MeshSection] = field(default_factory=list)
    role: Any = None


@dataclass
class SeparationArc:
    """Half section of a separation plane: ``N/2 + 1`` node ids from CT0 to CT1."""

    key: Hashable
    group: int
    center: np.ndarray
    plane_normal: np.ndarray
    direction: np.ndarray
    node_ids: np.ndarray


@dataclass
class SectionRef:
    """Nodes of an existing section, used to glue a vessel onto a furcation end."""

    key: Hashable
    node_keys: List[Hashable]
    positions: np.ndarray
    center: np.ndarray
    normal: np.ndarray


class StructuredSurfaceMesh:
    """Quad surface of swept sections with key-addressed, shareable nodes.

    Parameters
    ----------
    N : int
        Nodes per section.
    """

    def __init__(self, N: int) -> None:
        self.N = N
        self._array = np.zeros((0, 3))
        self._pending: List[np.ndarray] = []
        self.node_keys: List[Hashable] = []
        self._ids: Dict[Hashable, int] = {}
        self.patches: List[SurfacePatch] = []
        self.arcs: Dict[Hashable, SeparationArc] = {}
        self.pinned: Set[int] = set()
        self.flags: List[Tuple[int, int]] = []

    # -------------------------------------------------------------- nodes
    @property
    def nodes(self) -> np.ndarray:
        if self._pending:
            self._array = np.vstack([self._array, np.array(self._pending)])
            self._pending = []
        return self._array

    @nodes.setter
    def nodes(self, value: np.ndarray) -> None:
        value = np.asarray(value, dtype=float)
        if value.shape != (len(self.node_keys), 3):
            raise ConsistencyError(f"node array shape {value.shape} does not match {len(self.node_keys)} nodes")
        self._pending = []
        self._array = value.copy()

    def add_node(self, key: Hashable, position: Sequence[float]) -> int:
        """Id of the node with ``key``, creating it at ``position`` if new."""
        if key in self._ids:
            return self._ids[key]
        node = len(self.node_keys)
        self._ids[key] = node
        self.node_keys.append(key)
        self._pending.append(np.asarray(position, dtype=float).reshape(3))
        return node

    def node_id(self, key: Hashable) -> int:
        return self._ids[key]

    def has_node(self, key: Hashable) -> bool:
        return key in self._ids

    @property
    def node_count(self) -> int:
        return len(self.node_keys)

    # ----------------------------------------------------------- sections
    def add_section(
        self,
        patch: SurfacePatch,
        key: Hashable,
        node_keys: Sequence[Hashable],
        positions: np.ndarray,
        center: np.ndarray,
        normal: np.ndarray,
        halves: Optional[Tuple[Hashable, Hashable]] = None,
    ) -> MeshSection:
        if len(node_keys) != self.N:
            raise ConsistencyError(f"section {key} has {len(node_keys)} nodes, expected {self.N}")
        ids = np.array([self.add_node(k, p) for k, p in zip(node_keys, positions)], dtype=np.int64)
        section = MeshSection(key, ids, np.asarray(center, float), np.asarray(normal, float), halves)
        patch.sections.append(section)
        return section

    def section_positions(self, patch_index: int, section_index: int) -> np.ndarray:
        return self.nodes[self.patches[patch_index].sections[section_index].node_ids]

    def section_ref(self, patch_index: int, section_index: int) -> SectionRef:
        section = self.patches[patch_index].sections[section_index]
        return SectionRef(
            key=section.key,
            node_keys=[self.node_keys[i] for i in section.node_ids],
            positions=self.nodes[section.node_ids].copy(),
            center=section.center.copy(),
            normal=section.normal.copy(),
        )

    def iter_sections(self) -> Iterator[Tuple[SurfacePatch, int, MeshSection]]:
        for patch in self.patches:
            for s, section in enumerate(patch.sections):
                yield patch, s, section

    # --------------------------------------------------------------- quads
    def quads(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Outward-oriented quads with their patch labels and kinds.

        Returns
        -------
        Tuple[np.ndarray, np.ndarray, np.ndarray]
            ``(Q, 4)`` node ids, ``(Q,)`` labels, ``(Q,)`` kind flags
            (1 for furcation patches).
        """
        quads, labels, kinds = [], [], []
        k = np.arange(self.N)
        k1 = (k + 1) % self.N
        for patch in self.patches:
            for a, b in zip(patch.sections[:-1], patch.sections[1:]):
                block = np.column_stack([a.node_ids[k], a.node_ids[k1], b.node_ids[k1], b.node_ids[k]])
                quads.append(block)
                labels.append(np.full(self.N, patch.label))
                kinds.append(np.full(self.N, 1 if patch.kind == FURCATION else 0))
        if not quads:
            return np.zeros((0, 4), dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int8)
        return np.vstack(quads), np.concatenate(labels), np.concatenate(kinds).astype(np.int8)

    def edges(self) -> np.ndarray:
        """Unique undirected quad edges as sorted ``(E, 2)`` pairs."""
        quads, _, _ = self.quads()
        if not len(quads):
            return np.zeros((0, 2), dtype=np.int64)
        pairs = np.vstack([quads[:, [0, 1]], quads[:, [1, 2]], quads[:, [2, 3]], quads[:, [3, 0]]])
        return np.unique(np.sort(pairs, axis=1), axis=0)

    # --------------------------------------------------------------- merge
    def merge(self, other: "StructuredSurfaceMesh") -> Dict[int, int]:
        """Append ``other``; nodes with equal keys are identified.

        Returns the map from ``other``'s node ids to ids in this mesh.
        """
        if other.N != self.N:
            raise ConsistencyError("cannot merge meshes with different N")
        positions = other.nodes
        mapping = {i: self.add_node(key, positions[i]) for i, key in enumerate(other.node_keys)}
        remap = np.vectorize(mapping.__getitem__, otypes=[np.int64])
        for patch in other.patches:
            sections = [
                MeshSection(s.key, remap(s.node_ids), s.center, s.normal, s.halves) for s in patch.sections
            ]
            self.patches.append(SurfacePatch(patch.label, patch.kind, sections, patch.role))
        for key, arc in other.arcs.items():
            self.arcs[key] = SeparationArc(arc.key, arc.group, arc.center, arc.plane_normal, arc.direction, remap(arc.node_ids))
        self.pinned.update(mapping[i] for i in other.pinned)
        self.flags.extend(other.flags)
        return mapping

    def copy(self) -> "StructuredSurfaceMesh":
        out = StructuredSurfaceMesh(self.N)
        out.merge(self)
        return out
