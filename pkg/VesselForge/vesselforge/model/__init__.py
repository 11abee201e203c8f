from vesselforge.model.furcation import (
    build_nfurcation,
    estimate_bifurcation,
    find_apex,
    junction_branches,
    merged_centerline,
)
from vesselforge.model.network_model import assemble_network, section_constraint, vessel_data
from vesselforge.model.serialize import (
    load_network_model,
    network_model_from_dict,
    network_model_to_dict,
    save_network_model,
)
from vesselforge.model.tube import TubeSurface, tube_distance, tube_surface_distance
from vesselforge.model.types import (
    Apex,
    CrossSection,
    FailureRecord,
    FurcationModel,
    ModelOptions,
    NetworkModel,
    VesselJoint,
)

__all__ = [
    "Apex",
    "CrossSection",
    "FailureRecord",
    "FurcationModel",
    "ModelOptions",
    "NetworkModel",
    "TubeSurface",
    "VesselJoint",
    "assemble_network",
    "build_nfurcation",
    "estimate_bifurcation",
    "find_apex",
    "junction_branches",
    "load_network_model",
    "merged_centerline",
    "network_model_from_dict",
    "network_model_to_dict",
    "save_network_model",
    "section_constraint",
    "tube_distance",
    "tube_surface_distance",
    "vessel_data",
]
