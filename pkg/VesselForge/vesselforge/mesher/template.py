# -*- coding: utf-8 -*-
"""Combinatorics and reference geometry of the O-grid section pattern.

Ring layer ``l`` (0 on the wall, ``L = n_alpha + n_beta`` on the core
boundary) holds ``N`` nodes; the core is an ``m x m`` block, ``m = N / 4``,
whose boundary is ring layer ``L``. Node ids: ring node ``(l, k)`` is
``l * N + k``, core interior nodes follow in lattice order.
"""

from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

BOUNDARY_LAYER, INTERMEDIATE_LAYER, CORE = 0, 1, 2
# share of the core boundary pulled from its square onto the circle of radius gamma
CORE_ROUNDING = 0.5


def transfinite(grid: np.ndarray) -> np.ndarray:
    """Fill the interior of an ``(A + 1, B + 1, dim)`` lattice from its four sides.

    Bilinearly blended Coons patch with uniform parameters ``a / A`` and
    ``b / B``; the sides are returned unchanged.
    """
    A, B = grid.shape[0] - 1, grid.shape[1] - 1
    s = np.linspace(0.0, 1.0, A + 1)[:, None, None]
    t = np.linspace(0.0, 1.0, B + 1)[None, :, None]
    sides = (1 - s) * grid[None, 0] + s * grid[None, A] + (1 - t) * grid[:, None, 0] + t * grid[:, None, B]
    corners = (
        (1 - s) * (1 - t) * grid[0, 0] + s * (1 - t) * grid[A, 0] + (1 - s) * t * grid[0, B] + s * t * grid[A, B]
    )
    out = grid.copy()
    out[1:-1, 1:-1] = (sides - corners)[1:-1, 1:-1]
    return out


class OGridTemplate:
    """Reference O-grid pattern in the unit disc.

    Parameters
    ----------
    N : int
        Wall nodes, multiple of 4.
    n_alpha, n_beta : int
        Boundary and intermediate layer counts.
    alpha, beta, gamma : float
        Radial fractions; the core corners sit at radius ``gamma``.
    """

    def __init__(self, N: int, n_alpha: int, n_beta: int, alpha: float, beta: float, gamma: float) -> None:
        if N % 4:
            raise ValueError(f"N must be a multiple of 4, got {N}")
        self.N = N
        self.m = N // 4
        self.layers = n_alpha + n_beta
        self.n_alpha = n_alpha
        ring_share = alpha / (alpha + beta)
        taus = [1.0 - ring_share * l / n_alpha for l in range(n_alpha)]
        taus += [(1.0 - ring_share) * (1.0 - j / n_beta) for j in range(n_beta + 1)]
        self.tau = np.array(taus)

        m, c0 = self.m, self.m // 2
        self.corner_offset = c0
        psi = 2.0 * np.pi * c0 / N - np.pi / 4.0
        rotation = np.array([[np.cos(psi), -np.sin(psi)], [np.sin(psi), np.cos(psi)]])

        lattice_ids: Dict[Tuple[int, int], int] = {}
        for p, (a, b) in enumerate(self._perimeter()):
            lattice_ids[(a, b)] = self.layers * N + (p - m + c0) % N
        next_id = (self.layers + 1) * N
        for a in range(1, m):
            for b in range(1, m):
                lattice_ids[(a, b)] = next_id
                next_id += 1
        self.node_count = next_id
        self.lattice_ids = lattice_ids
        self.grid = np.empty((m + 1, m + 1), dtype=np.int64)
        for (a, b), node in lattice_ids.items():
            self.grid[a, b] = node

        coords = np.zeros((self.node_count, 2))
        half = gamma / np.sqrt(2.0)
        for p in self._perimeter():
            square = rotation @ np.array([(2.0 * p[0] / m - 1.0) * half, (2.0 * p[1] / m - 1.0) * half])
            circle = gamma * square / np.linalg.norm(square)
            coords[lattice_ids[p]] = (1.0 - CORE_ROUNDING) * square + CORE_ROUNDING * circle
        coords[self.grid] = transfinite(coords[self.grid])
        phi = 2.0 * np.pi * np.arange(N) / N
        wall = np.column_stack([np.cos(phi), np.sin(phi)])
        core = coords[self.layers * N : (self.layers + 1) * N]
        for l in range(self.layers):
            coords[l * N : (l + 1) * N] = core + self.tau[l] * (wall - core)
        self.coords = coords

        cells, classes = [], []
        for l in range(self.layers):
            for k in range(N):
                k1 = (k + 1) % N
                cells.append([(l + 1) * N + k, l * N + k, l * N + k1, (l + 1) * N + k1])
                classes.append(BOUNDARY_LAYER if l < n_alpha else INTERMEDIATE_LAYER)
        for a in range(m):
            for b in range(m):
                cells.append([
                    lattice_ids[(a, b)], lattice_ids[(a + 1, b)],
                    lattice_ids[(a + 1, b + 1)], lattice_ids[(a, b + 1)],
                ])
                classes.append(CORE)
        self.cells = np.array(cells, dtype=np.int64)
        self.cell_classes = np.array(classes, dtype=np.int8)

    def _perimeter(self):
        """Core boundary lattice points, counterclockwise from corner ``(m, 0)``."""
        m = self.m
        points = [(m, b) for b in range(m)]
        points += [(m - a, m) for a in range(m)]
        points += [(0, m - b) for b in range(m)]
        points += [(a, 0) for a in range(m)]
        return points

    # ------------------------------------------------------------ queries
    def ring_node(self, layer: int, k: int) -> int:
        return layer * self.N + k % self.N

    def ring_of(self, node: int) -> Tuple[int, int]:
        """``(layer, k)`` of a ring node, ``(-1, -1)`` for core interior nodes."""
        if node < (self.layers + 1) * self.N:
            return divmod(node, self.N)
        return -1, -1

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def polar(self) -> Tuple[np.ndarray, np.ndarray]:
        """Radius and angle in [0, 2 pi) of every node."""
        radius = np.linalg.norm(self.coords, axis=1)
        angle = np.mod(np.arctan2(self.coords[:, 1], self.coords[:, 0]), 2.0 * np.pi)
        return radius, angle

    def mirror(self) -> np.ndarray:
        """Permutation of node ids mirroring the pattern across the x axis.

        Only defined when the pattern is symmetric, i.e. ``N % 8 == 0``.
        """
        if self.N % 8:
            raise ValueError("mirror needs N divisible by 8")
        perm = np.empty(self.node_count, dtype=np.int64)
        for l in range(self.layers + 1):
            for k in range(self.N):
                perm[l * self.N + k] = l * self.N + (-k) % self.N
        for (a, b), node in self.lattice_ids.items():
            perm[node] = self.lattice_ids[(a, self.m - b)]
        return perm

    def axis_mask(self) -> np.ndarray:
        """Nodes on the splitting diameter (template ``y == 0``)."""
        return np.abs(self.coords[:, 1]) < 1e-12


@lru_cache(maxsize=16)
def ogrid_template(N: int, n_alpha: int, n_beta: int, alpha: float, beta: float, gamma: float) -> OGridTemplate:
    return OGridTemplate(N, n_alpha, n_beta, alpha, beta, gamma)


def template_for(params) -> OGridTemplate:
    return ogrid_template(params.N, params.n_alpha, params.n_beta, params.alpha, params.beta, params.gamma)


def expected_counts(N: int, n_alpha: int, n_beta: int) -> Tuple[int, int]:
    """Node and cell count of one pattern, enumerated independently of the template."""
    m = N // 4
    layers = n_alpha + n_beta
    nodes = N * (layers + 1) + (m - 1) ** 2
    cells = N * layers + m * m
    return nodes, cells
