# -*- coding: utf-8 -*-
"""Topology and geometry edits of a centerline network.

Every operation returns a new :class:`CenterlineNetwork`; branches are
addressed by their index in :func:`extract_branches` order.
"""

from typing import Any, Callable, Dict, Iterable, List, Mapping, Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from vesselforge.centerline.network import CenterlineNetwork, extract_branches, polyline_length
from vesselforge.centerline.types import Branch, CenterlinePoint
from vesselforge.errors import EditError


def _branch(net: CenterlineNetwork, index: int) -> Branch:
    branches = extract_branches(net)
    if not 0 <= index < len(branches):
        raise EditError(f"branch {index} does not exist ({len(branches)} branches)")
    return branches[index]


def _exclusive_ids(net: CenterlineNetwork, branch: Branch) -> List[int]:
    """Branch points not shared with another branch."""
    ids = list(branch.point_ids[1:])
    if branch.outlet_junction is not None:
        ids = ids[:-1]
    if branch.inlet_junction is None and net.parent(branch.start) is None:
        ids.insert(0, branch.start)
    return ids


def scale_radius(net: CenterlineNetwork, branch_index: int, factor: float) -> CenterlineNetwork:
    """Multiply the radii of a branch's own points by ``factor``."""
    if not factor > 0:
        raise EditError(f"radius factor must be positive, got {factor}")
    branch = _branch(net, branch_index)
    targets = set(_exclusive_ids(net, branch))
    return net.with_points(
        p.moved(radius=p.radius * factor) if p.id in targets else p for p in net.points
    )


def remove_branch(net: CenterlineNetwork, branch_index: int) -> CenterlineNetwork:
    """Remove a branch and everything downstream of it.

    The junction it started from stays; when that junction is left with a
    single successor it becomes an ordinary point of a through vessel.
    """
    branch = _branch(net, branch_index)
    start = branch.start
    if net.parent(start) is None and len(net.children(start)) < 2:
        raise EditError(f"branch {branch_index} is the only outlet of root {start}")
    removed = set(net.subtree(branch.point_ids[1]))
    return net.with_points(p for p in net.points if p.id not in removed)


def set_points(
    net: CenterlineNetwork, branch_index: int, points: Sequence[Sequence[float]]
) -> CenterlineNetwork:
    """Replace the interior points of a branch by ``points`` (rows of x, y, z, r)."""
    branch = _branch(net, branch_index)
    rows = np.asarray(points, dtype=float).reshape(-1, 4)
    if np.any(rows[:, 3] <= 0):
        raise EditError("set_points requires positive radii")
    return _replace_interior(net, branch, rows)


def resample_branch(net: CenterlineNetwork, branch_index: int, density: float) -> CenterlineNetwork:
    """Resample a branch evenly along its polyline to ``density`` points per mm."""
    if not density > 0:
        raise EditError(f"density must be positive, got {density}")
    return _resample(net, _branch(net, branch_index), density)


def resample_network(net: CenterlineNetwork, density: float) -> CenterlineNetwork:
    """Resample every branch to ``density`` points per mm.

    Branches are tracked by their end point ids, since replacing interior
    points may reorder the children of a junction.
    """
    if not density > 0:
        raise EditError(f"density must be positive, got {density}")
    for start, end in [(b.start, b.end) for b in extract_branches(net)]:
        branch = next(b for b in extract_branches(net) if b.start == start and b.end == end)
        net = _resample(net, branch, density)
    return net


def _resample(net: CenterlineNetwork, branch: Branch, density: float) -> CenterlineNetwork:
    data = net.xyzr(branch.point_ids)
    length = polyline_length(data)
    count = max(2, int(round(density * length)))
    cumulative = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(data[:, :3], axis=0), axis=1))])
    targets = np.linspace(0.0, length, count)[1:-1]
    rows = np.column_stack([np.interp(targets, cumulative, data[:, k]) for k in range(4)])
    return _replace_interior(net, branch, rows)


def rotate_branch(
    net: CenterlineNetwork, branch_index: int, axis: Sequence[float], angle_deg: float
) -> CenterlineNetwork:
    """Rotate a branch and its downstream subtree about its inlet junction."""
    branch = _branch(net, branch_index)
    if branch.inlet_junction is None:
        raise EditError(f"branch {branch_index} has no inlet junction to rotate about")
    axis = np.asarray(axis, dtype=float)
    if np.linalg.norm(axis) == 0:
        raise EditError("rotation axis must be nonzero")
    rotation = Rotation.from_rotvec(np.deg2rad(angle_deg) * axis / np.linalg.norm(axis))
    pivot = np.asarray(net.point(branch.start).position)
    moved = set(net.subtree(branch.point_ids[1]))
    return net.with_points(
        p.moved(position=pivot + rotation.apply(np.asarray(p.position) - pivot)) if p.id in moved else p
        for p in net.points
    )


def _replace_interior(net: CenterlineNetwork, branch: Branch, rows: np.ndarray) -> CenterlineNetwork:
    interior = set(branch.point_ids[1:-1])
    next_id = net.next_id()
    new_points: List[CenterlinePoint] = []
    parent = branch.start
    for row in rows:
        new_points.append(CenterlinePoint(id=next_id, position=tuple(row[:3]), radius=row[3], parent_id=parent))
        parent = next_id
        next_id += 1
    result: List[CenterlinePoint] = []
    for point in net.points:
        if point.id in interior:
            continue
        if point.id == branch.end:
            point = CenterlinePoint(point.id, point.position, point.radius, parent, point.type)
        result.append(point)
        if point.id == branch.start:
            result.extend(new_points)
    return net.with_points(result)


EDIT_OPS: Dict[str, Callable[..., CenterlineNetwork]] = {
    "scale_radius": lambda net, op: scale_radius(net, int(op["branch"]), float(op["factor"])),
    "remove_branch": lambda net, op: remove_branch(net, int(op["branch"])),
    "set_points": lambda net, op: set_points(net, int(op["branch"]), op["points"]),
    "resample_branch": lambda net, op: resample_branch(net, int(op["branch"]), float(op["density"])),
    "rotate_branch": lambda net, op: rotate_branch(
        net, int(op["branch"]), op.get("axis", (0, 0, 1)), float(op["angle"])
    ),
}


def apply_edit_ops(net: CenterlineNetwork, ops: Iterable[Mapping[str, Any]]) -> CenterlineNetwork:
    """Apply edit operations in order, e.g. ``{"op": "scale_radius", "branch": 1, "factor": 1.5}``.

    Branch indices refer to the network as it is before each operation.
    """
    for position, op in enumerate(ops):
        name = op.get("op")
        if name not in EDIT_OPS:
            raise EditError(f"edit #{position}: unknown operation {name!r}")
        try:
            net = EDIT_OPS[name](net, op)
        except KeyError as e:
            raise EditError(f"edit #{position} ({name}) is missing field {e}") from None
    return net
