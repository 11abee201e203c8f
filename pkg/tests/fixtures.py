# -*- coding: utf-8 -*-
"""Synthetic centerlines shared by the test modules."""

import tempfile
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from vesselforge.centerline import CenterlineNetwork, CenterlinePoint, serialize_swc


def tube_rows(length: float = 20.0, radius: float = 1.0, spacing: float = 0.5) -> np.ndarray:
    """Straight tube along x."""
    x = np.arange(0.0, length + 1e-9, spacing)
    return np.column_stack([x, np.zeros_like(x), np.zeros_like(x), np.full_like(x, radius)])


def torus_arc_rows(major: float = 10.0, radius: float = 1.0, angle: float = np.pi / 2, count: int = 60) -> np.ndarray:
    """Quarter circle of radius ``major`` in the xy-plane."""
    phi = np.linspace(0.0, angle, count)
    return np.column_stack([major * np.cos(phi), major * np.sin(phi), np.zeros_like(phi), np.full_like(phi, radius)])


def chain(rows: np.ndarray, first_id: int = 1, parent: int = None) -> List[CenterlinePoint]:
    points = []
    for offset, row in enumerate(rows):
        pid = first_id + offset
        points.append(CenterlinePoint(pid, tuple(row[:3]), float(row[3]), parent))
        parent = pid
    return points


def tube_network(**kwargs) -> CenterlineNetwork:
    return CenterlineNetwork(chain(tube_rows(**kwargs)))


def furcation_network(
    angles_deg: Sequence[float] = (30.0, -30.0),
    inlet_length: float = 15.0,
    outlet_length: float = 15.0,
    inlet_radius: float = 1.0,
    outlet_radius: float = 0.8,
    spacing: float = 0.5,
    hook_radius: Optional[float] = None,
) -> CenterlineNetwork:
    """Planar furcation: an inlet along +x, one outlet per angle in the xy-plane.

    With ``hook_radius`` the last outlet ends in a three-quarter turn of
    that radius, sampled ten times denser.
    """
    inlet = tube_rows(inlet_length, inlet_radius, spacing)
    points = chain(inlet)
    junction = points[-1].id
    next_id = junction + 1
    steps = np.arange(spacing, outlet_length + 1e-9, spacing)
    for index, angle in enumerate(np.deg2rad(list(angles_deg))):
        direction = np.array([np.cos(angle), np.sin(angle), 0.0])
        rows = np.column_stack([inlet[-1, :3] + steps[:, None] * direction, np.full(len(steps), outlet_radius)])
        if hook_radius is not None and index == len(angles_deg) - 1:
            rows = np.vstack([rows, hook_rows(rows[-1, :3], direction, hook_radius, outlet_radius, spacing / 10.0)])
        branch = chain(rows, next_id, junction)
        points.extend(branch)
        next_id = branch[-1].id + 1
    return CenterlineNetwork(points)


def hook_rows(start: np.ndarray, direction: np.ndarray, radius: float, tube_radius: float, spacing: float) -> np.ndarray:
    """Counterclockwise three-quarter circle in the xy-plane leaving ``start`` along ``direction``."""
    left = np.array([-direction[1], direction[0], 0.0])
    center = start + radius * left
    phi = np.arange(spacing / radius, 1.5 * np.pi, spacing / radius)
    offsets = -np.cos(phi)[:, None] * left + np.sin(phi)[:, None] * direction
    return np.column_stack([center + radius * offsets, np.full(len(phi), tube_radius)])


def y_network(**kwargs) -> CenterlineNetwork:
    return furcation_network((30.0, -30.0), **kwargs)


def trifurcation_network(**kwargs) -> CenterlineNetwork:
    return furcation_network((40.0, 0.0, -40.0), **kwargs)


def write_swc(net: CenterlineNetwork, directory: str, name: str = "centerline.swc") -> Path:
    path = Path(directory) / name
    path.write_text(serialize_swc(net), encoding="UTF-8")
    return path


def temp_dir() -> tempfile.TemporaryDirectory:
    return tempfile.TemporaryDirectory(prefix="vesselforge_test_")
