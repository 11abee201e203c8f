# -*- coding: utf-8 -*-
"""Centerline network graph and topology queries."""

from typing import Dict, Iterable, List, Optional, Sequence

import networkx as nx
import numpy as np

from vesselforge.centerline.types import Branch, CenterlinePoint
from vesselforge.errors import CenterlineFormatError, TopologyError


class CenterlineNetwork:
    """Validated forest of centerline points.

    The network is immutable after construction; edits build a new network.

    Parameters
    ----------
    points : Iterable[CenterlinePoint]
        Points in source order. Child order follows this order.
    source_lines : Dict[int, int], optional
        Point id to 1-based line number, used in error messages.

    Raises
    ------
    CenterlineFormatError
        Duplicate id, dangling parent, nonpositive radius or cycle.
    """

    def __init__(
        self,
        points: Iterable[CenterlinePoint],
        source_lines: Optional[Dict[int, int]] = None,
    ) -> None:
        lines = source_lines or {}
        self._points: Dict[int, CenterlinePoint] = {}
        for point in points:
            if point.id in self._points:
                raise CenterlineFormatError(f"duplicate id {point.id}", lines.get(point.id))
            if not point.radius > 0:
                raise CenterlineFormatError(
                    f"nonpositive radius {point.radius} for point {point.id}", lines.get(point.id)
                )
            self._points[point.id] = point

        self._children: Dict[int, List[int]] = {pid: [] for pid in self._points}
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self._points)
        for point in self._points.values():
            if point.parent_id is None:
                continue
            if point.parent_id not in self._points:
                raise CenterlineFormatError(
                    f"dangling parent {point.parent_id} of point {point.id}", lines.get(point.id)
                )
            self._children[point.parent_id].append(point.id)
            self.graph.add_edge(point.parent_id, point.id)

        try:
            cycle = nx.find_cycle(self.graph)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            first = max(cycle, key=lambda edge: lines.get(edge[1], 0))[1]
            raise CenterlineFormatError(
                f"cycle detected through point {first}", lines.get(first)
            )

    # ------------------------------------------------------------------ access
    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, point_id: int) -> bool:
        return point_id in self._points

    @property
    def points(self) -> List[CenterlinePoint]:
        return list(self._points.values())

    def point(self, point_id: int) -> CenterlinePoint:
        try:
            return self._points[point_id]
        except KeyError:
            raise TopologyError(f"unknown point id {point_id}") from None

    def children(self, point_id: int) -> List[int]:
        return list(self._children[point_id])

    def parent(self, point_id: int) -> Optional[int]:
        return self.point(point_id).parent_id

    @property
    def roots(self) -> List[int]:
        return [pid for pid, p in self._points.items() if p.parent_id is None]

    @property
    def leaves(self) -> List[int]:
        return [pid for pid, c in self._children.items() if not c]

    @property
    def junctions(self) -> List[int]:
        """Points with two or more successors, in source order."""
        return [pid for pid, c in self._children.items() if len(c) >= 2]

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def xyzr(self, point_ids: Sequence[int]) -> np.ndarray:
        """``(len(point_ids), 4)`` array of coordinates and radii."""
        return np.array([self._points[pid].xyzr for pid in point_ids], dtype=float).reshape(-1, 4)

    def subtree(self, point_id: int) -> List[int]:
        """``point_id`` and every point downstream of it."""
        return [point_id, *nx.descendants(self.graph, point_id)]

    def next_id(self) -> int:
        return max(self._points, default=0) + 1

    def with_points(self, points: Iterable[CenterlinePoint]) -> "CenterlineNetwork":
        """New network built from ``points``; validation runs again."""
        return CenterlineNetwork(points)


def extract_branches(net: CenterlineNetwork) -> List[Branch]:
    """Split the network into branches.

    Branches are numbered in depth-first order from the roots, children
    visited in source order, so indices are stable for a given file.
    """
    junctions = set(net.junctions)
    branches: List[Branch] = []
    pending = [(root, child) for root in net.roots for child in net.children(root)]
    pending.reverse()
    parent_branch: Dict[int, int] = {}

    while pending:
        start, current = pending.pop()
        ids = [start, current]
        while len(net.children(current)) == 1:
            current = net.children(current)[0]
            ids.append(current)
        index = len(branches)
        outlet = current if current in junctions else None
        branches.append(
            Branch(
                index=index,
                point_ids=tuple(ids),
                inlet_junction=start if start in junctions else None,
                outlet_junction=outlet,
            )
        )
        if start in parent_branch:
            upstream = branches[parent_branch[start]]
            branches[upstream.index] = Branch(
                index=upstream.index,
                point_ids=upstream.point_ids,
                inlet_junction=upstream.inlet_junction,
                outlet_junction=upstream.outlet_junction,
                children=upstream.children + (index,),
            )
        if outlet is not None:
            parent_branch[outlet] = index
            for child in reversed(net.children(outlet)):
                pending.append((outlet, child))
    return branches


def polyline_length(points: np.ndarray) -> float:
    """Total spatial length of a polyline given as rows of coordinates."""
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return 0.0
    return float(np.linalg.norm(np.diff(points[:, :3], axis=0), axis=1).sum())


def point_density(branch: Branch, net: CenterlineNetwork) -> float:
    """Number of points per mm of polyline length.

    Raises
    ------
    TopologyError
        If the branch has fewer than two points or zero length.
    """
    if len(branch.point_ids) < 2:
        raise TopologyError(f"branch {branch.index} has fewer than 2 points")
    length = polyline_length(net.xyzr(branch.point_ids))
    if length <= 0:
        raise TopologyError(f"branch {branch.index} has zero length")
    return len(branch.point_ids) / length


def network_density(net: CenterlineNetwork) -> float:
    """Average point density over all branches (points per mm)."""
    branches = extract_branches(net)
    length = sum(polyline_length(net.xyzr(b.point_ids)) for b in branches)
    if length <= 0:
        raise TopologyError("network has zero total length")
    return len(net) / length
