# -*- coding: utf-8 -*-
"""Corner-based scaled Jacobians of hexahedra and quads."""

from typing import Tuple

import numpy as np

# Right-handed edge triples at the corners of a VTK hexahedron.
HEX_CORNERS = np.array([
    [0, 1, 3, 4],
    [1, 2, 0, 5],
    [2, 3, 1, 6],
    [3, 0, 2, 7],
    [4, 7, 5, 0],
    [5, 4, 6, 1],
    [6, 5, 7, 2],
    [7, 6, 4, 3],
])
DEGENERATE_TOL = 1e-12


def corner_determinants(cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Normalized corner determinants of ``(H, 8, 3)`` hex vertices.

    Returns the ``(H, 8)`` determinants and an ``(H,)`` mask of cells with
    a zero-length edge at some corner.
    """
    cells = np.asarray(cells, dtype=float).reshape(-1, 8, 3)
    corner = cells[:, HEX_CORNERS[:, 0]]
    edges = np.stack([cells[:, HEX_CORNERS[:, e]] - corner for e in (1, 2, 3)], axis=2)
    lengths = np.linalg.norm(edges, axis=3)
    scale = np.max(lengths.reshape(len(cells), -1), axis=1, initial=0.0)
    degenerate = np.any(lengths <= DEGENERATE_TOL * np.maximum(scale, 1.0)[:, None, None], axis=(1, 2))
    safe = np.where(lengths > 0.0, lengths, 1.0)
    unit = edges / safe[..., None]
    return np.linalg.det(unit), degenerate


def scaled_jacobian_hex(cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Minimum normalized corner determinant per hex, in [-1, 1].

    Degenerate cells score -1 and are flagged in the returned mask.
    """
    dets, degenerate = corner_determinants(cells)
    values = np.clip(np.min(dets, axis=1, initial=1.0), -1.0, 1.0)
    values[degenerate] = -1.0
    return values, degenerate


def scaled_jacobian_quad(cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Scaled Jacobian of ``(Q, 4, 3)`` quads in their best-fit planes.

    The plane normal is the Newell normal of the quad, so a convex quad
    scores positive whatever its orientation in space.
    """
    cells = np.asarray(cells, dtype=float).reshape(-1, 4, 3)
    normal = np.cross(cells[:, 2] - cells[:, 0], cells[:, 3] - cells[:, 1])
    norm = np.linalg.norm(normal, axis=1)
    degenerate = norm <= DEGENERATE_TOL
    normal = normal / np.where(degenerate, 1.0, norm)[:, None]
    forward = np.roll(cells, -1, axis=1) - cells
    backward = np.roll(cells, 1, axis=1) - cells
    lf, lb = np.linalg.norm(forward, axis=2), np.linalg.norm(backward, axis=2)
    degenerate |= np.any((lf <= DEGENERATE_TOL) | (lb <= DEGENERATE_TOL), axis=1)
    cross = np.einsum("qkj,qj->qk", np.cross(forward, backward), normal)
    values = cross / np.where(lf * lb > 0.0, lf * lb, 1.0)
    values = np.clip(np.min(values, axis=1, initial=1.0), -1.0, 1.0)
    values[degenerate] = -1.0
    return values, degenerate


def hex_quality(vertices: np.ndarray, hexes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    hexes = np.asarray(hexes, dtype=np.int64)
    if not len(hexes):
        return np.zeros(0), np.zeros(0, dtype=bool)
    return scaled_jacobian_hex(np.asarray(vertices)[hexes])


def quad_quality(vertices: np.ndarray, quads: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    quads = np.asarray(quads, dtype=np.int64)
    if not len(quads):
        return np.zeros(0), np.zeros(0, dtype=bool)
    return scaled_jacobian_quad(np.asarray(vertices)[quads])
