from vesselforge.deform.projection import project_nodes, project_surface_nodes, rebuild_volume_after_deform
from vesselforge.deform.target import TargetSurface

__all__ = ["TargetSurface", "project_nodes", "project_surface_nodes", "rebuild_volume_after_deform"]
