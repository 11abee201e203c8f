# -*- coding: utf-8 -*-
"""Value types of the centerline network."""

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class CenterlinePoint:
    """One centerline sample.

    Attributes
    ----------
    id : int
        Identifier, unique within a network.
    position : Tuple[float, float, float]
        Spatial coordinates in mm.
    radius : float
        Vessel radius in mm, strictly positive.
    parent_id : int, optional
        Upstream point, ``None`` for a root.
    type : int
        swc structure type, carried through but never interpreted.
    """

    id: int
    position: Tuple[float, float, float]
    radius: float
    parent_id: Optional[int] = None
    type: int = 2

    @property
    def xyzr(self) -> np.ndarray:
        return np.array([*self.position, self.radius], dtype=float)

    def moved(self, position=None, radius=None) -> "CenterlinePoint":
        """Copy with a new position and/or radius."""
        return replace(
            self,
            position=self.position if position is None else tuple(float(v) for v in position),
            radius=self.radius if radius is None else float(radius),
        )


@dataclass(frozen=True)
class Branch:
    """Unbranched run of points between roots, junctions and leaves.

    ``point_ids`` starts at a root or junction and ends at a junction or a
    leaf; junction points are shared by every branch that touches them.
    """

    index: int
    point_ids: Tuple[int, ...]
    inlet_junction: Optional[int] = None
    outlet_junction: Optional[int] = None
    children: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def start(self) -> int:
        return self.point_ids[0]

    @property
    def end(self) -> int:
        return self.point_ids[-1]

    def __len__(self) -> int:
        return len(self.point_ids)
