from vesselforge.mesher.apex import fillet_polyline_2d, smooth_apex
from vesselforge.mesher.exporters import write_obj_quads, write_vtk_hex, write_vtk_quads
from vesselforge.mesher.furcation_surface import mesh_furcation_surface
from vesselforge.mesher.network_mesher import NetworkMesh, mesh_furcation, mesh_network
from vesselforge.mesher.ogrid import HexMesh, build_ogrid_volume
from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.relaxation import relax_surface
from vesselforge.mesher.separation import SeparationGeometry, decompose_furcation
from vesselforge.mesher.surface import SectionRef, StructuredSurfaceMesh
from vesselforge.mesher.template import OGridTemplate, expected_counts, ogrid_template
from vesselforge.mesher.vessel_surface import mesh_vessel_surface

__all__ = [
    "HexMesh",
    "MeshParams",
    "NetworkMesh",
    "OGridTemplate",
    "SectionRef",
    "SeparationGeometry",
    "StructuredSurfaceMesh",
    "build_ogrid_volume",
    "decompose_furcation",
    "expected_counts",
    "fillet_polyline_2d",
    "mesh_furcation",
    "mesh_furcation_surface",
    "mesh_network",
    "mesh_vessel_surface",
    "ogrid_template",
    "relax_surface",
    "smooth_apex",
    "write_obj_quads",
    "write_vtk_hex",
    "write_vtk_quads",
]
