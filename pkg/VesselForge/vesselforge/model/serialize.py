# -*- coding: utf-8 -*-
"""JSON round trip of network models."""

import json
from pathlib import Path
from typing import Any, Dict, Union

from vesselforge.model.types import FailureRecord, FurcationModel, NetworkModel, VesselJoint
from vesselforge.spline.bspline import Spline4
from vesselforge.utils.atomic import atomic_write_text

FORMAT_VERSION = 1


def network_model_to_dict(model: NetworkModel) -> Dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "branch_count": model.branch_count,
        "junction_count": model.junction_count,
        "point_count": model.point_count,
        "vessels": {str(k): v.to_dict() for k, v in sorted(model.vessels.items())},
        "furcations": {str(k): f.to_dict() for k, f in sorted(model.furcations.items())},
        "joints": {
            str(k): [None if j is None else j.to_dict() for j in pair]
            for k, pair in sorted(model.joints.items())
        },
        "failures": [f.to_dict() for f in model.failures],
    }


def network_model_from_dict(data: Dict[str, Any]) -> NetworkModel:
    return NetworkModel(
        vessels={int(k): Spline4.from_dict(v) for k, v in data.get("vessels", {}).items()},
        furcations={int(k): FurcationModel.from_dict(f) for k, f in data.get("furcations", {}).items()},
        joints={
            int(k): (VesselJoint.from_dict(pair[0]), VesselJoint.from_dict(pair[1]))
            for k, pair in data.get("joints", {}).items()
        },
        failures=[FailureRecord.from_dict(f) for f in data.get("failures", [])],
        branch_count=int(data.get("branch_count", 0)),
        junction_count=int(data.get("junction_count", 0)),
        point_count=int(data.get("point_count", 0)),
    )


def save_network_model(model: NetworkModel, path: Union[str, Path]) -> None:
    atomic_write_text(path, json.dumps(network_model_to_dict(model), indent=2))


def load_network_model(path: Union[str, Path]) -> NetworkModel:
    with open(path, "r", encoding="utf-8") as f:
        return network_model_from_dict(json.load(f))
