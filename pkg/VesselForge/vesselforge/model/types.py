# -*- coding: utf-8 -*-
"""Data types of the parametric network model."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from vesselforge.errors import VesselForgeError
from vesselforge.spline.bspline import Spline4


def _unit(vector: np.ndarray) -> np.ndarray:
    vector = np.asarray(vector, dtype=float)
    norm = np.linalg.norm(vector)
    if not norm > 0:
        raise VesselForgeError("zero-length normal")
    return vector / norm


@dataclass(frozen=True)
class CrossSection:
    """Circular section: ``center`` (mm), ``radius`` (mm), unit ``normal``.

    The normal points downstream.
    """

    center: np.ndarray
    radius: float
    normal: np.ndarray

    def __post_init__(self) -> None:
        center = np.asarray(self.center, dtype=float).reshape(3)
        if not self.radius > 0:
            raise VesselForgeError(f"section radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "normal", _unit(np.asarray(self.normal).reshape(3)))

    @classmethod
    def on_spline(cls, spline: Spline4, u: float) -> "CrossSection":
        value = spline(u)
        return cls(value[:3], value[3], spline.tangent(u))

    def xyzr(self) -> np.ndarray:
        return np.append(self.center, self.radius)

    def to_dict(self) -> Dict[str, Any]:
        return {"center": self.center.tolist(), "radius": self.radius, "normal": self.normal.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CrossSection":
        return cls(np.asarray(data["center"]), data["radius"], np.asarray(data["normal"]))


@dataclass(frozen=True)
class ModelOptions:
    """Options of the furcation model estimation.

    Attributes
    ----------
    rounding_radius : float, optional
        Apex rounding radius R; ``0.2 * min(apical radii)`` when None.
    linear_radius : bool
        Impose a linear radius between inlet, apical and outlet sections.
    planarity_tolerance : float
        Largest out-of-plane angle of an outlet direction (rad).
    apex_samples : int
        Samples of the apex march before root refinement.
    """

    rounding_radius: Optional[float] = None
    linear_radius: bool = True
    planarity_tolerance: float = 0.2
    apex_samples: int = 200


@dataclass(frozen=True)
class Apex:
    """Apex between two angularly adjacent outlets.

    ``pair`` holds outlet positions in the angular order, ``params`` the
    parameters of the apex projections on the two shape splines.
    """

    point: np.ndarray
    pair: Tuple[int, int]
    params: Tuple[float, float]

    def to_dict(self) -> Dict[str, Any]:
        return {"point": self.point.tolist(), "pair": list(self.pair), "params": list(self.params)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Apex":
        return cls(np.asarray(data["point"], dtype=float), tuple(data["pair"]), tuple(data["params"]))


@dataclass
class FurcationModel:
    """Planar n-furcation model.

    Outlets are listed in angular order about the plane normal ``plane_normal``;
    ``splines[i]`` is the shape spline through the inlet and outlet ``i``.
    ``inlet_params``, ``apical_params`` and ``outlet_params`` give, per shape
    spline, the parameters of C0, AC_i and C_i.
    """

    junction: int
    inlet_branch: int
    outlet_branches: List[int]
    inlet: CrossSection
    apical: List[CrossSection]
    outlets: List[CrossSection]
    apexes: List[Apex]
    splines: List[Spline4]
    rounding_radius: float
    plane_normal: np.ndarray
    inlet_params: List[float] = field(default_factory=list)
    apical_params: List[float] = field(default_factory=list)
    outlet_params: List[float] = field(default_factory=list)
    junction_params: List[float] = field(default_factory=list)

    @property
    def n_out(self) -> int:
        return len(self.outlets)

    @property
    def sections(self) -> List[CrossSection]:
        return [self.inlet, *self.apical, *self.outlets]

    def outlet_index(self, branch: int) -> int:
        return self.outlet_branches.index(branch)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "junction": self.junction,
            "inlet_branch": self.inlet_branch,
            "outlet_branches": list(self.outlet_branches),
            "inlet": self.inlet.to_dict(),
            "apical": [s.to_dict() for s in self.apical],
            "outlets": [s.to_dict() for s in self.outlets],
            "apexes": [a.to_dict() for a in self.apexes],
            "splines": [s.to_dict() for s in self.splines],
            "rounding_radius": self.rounding_radius,
            "plane_normal": self.plane_normal.tolist(),
            "inlet_params": list(self.inlet_params),
            "apical_params": list(self.apical_params),
            "outlet_params": list(self.outlet_params),
            "junction_params": list(self.junction_params),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FurcationModel":
        return cls(
            junction=int(data["junction"]),
            inlet_branch=int(data["inlet_branch"]),
            outlet_branches=[int(b) for b in data["outlet_branches"]],
            inlet=CrossSection.from_dict(data["inlet"]),
            apical=[CrossSection.from_dict(s) for s in data["apical"]],
            outlets=[CrossSection.from_dict(s) for s in data["outlets"]],
            apexes=[Apex.from_dict(a) for a in data["apexes"]],
            splines=[Spline4.from_dict(s) for s in data["splines"]],
            rounding_radius=float(data["rounding_radius"]),
            plane_normal=np.asarray(data["plane_normal"], dtype=float),
            inlet_params=list(data.get("inlet_params", [])),
            apical_params=list(data.get("apical_params", [])),
            outlet_params=list(data.get("outlet_params", [])),
            junction_params=list(data.get("junction_params", [])),
        )


@dataclass(frozen=True)
class FailureRecord:
    """One failed vessel or furcation: ``kind`` is "vessel" or "furcation"."""

    kind: str
    id: int
    reason: str
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "id": self.id, "reason": self.reason, "detail": self.detail}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FailureRecord":
        return cls(data["kind"], int(data["id"]), data["reason"], data.get("detail", ""))


@dataclass
class VesselJoint:
    """Where a vessel end meets a furcation.

    ``role`` is ``"inlet"`` when the vessel feeds the furcation, otherwise
    the outlet position in the furcation's angular order.
    """

    junction: int
    role: Any

    def to_dict(self) -> Dict[str, Any]:
        return {"junction": self.junction, "role": self.role}

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> Optional["VesselJoint"]:
        if data is None:
            return None
        return cls(int(data["junction"]), data["role"])


@dataclass
class NetworkModel:
    """Assembled model: vessel splines, furcations, their joints and failures."""

    vessels: Dict[int, Spline4] = field(default_factory=dict)
    furcations: Dict[int, FurcationModel] = field(default_factory=dict)
    joints: Dict[int, Tuple[Optional[VesselJoint], Optional[VesselJoint]]] = field(default_factory=dict)
    failures: List[FailureRecord] = field(default_factory=list)
    branch_count: int = 0
    junction_count: int = 0
    point_count: int = 0
