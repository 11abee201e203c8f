from vesselforge.quality.jacobian import hex_quality, quad_quality, scaled_jacobian_hex, scaled_jacobian_quad
from vesselforge.quality.report import (
    QualityReport,
    build_report,
    quality_report,
    surface_quality_report,
    vtk_quality_report,
)

__all__ = [
    "QualityReport",
    "build_report",
    "hex_quality",
    "quad_quality",
    "quality_report",
    "scaled_jacobian_hex",
    "scaled_jacobian_quad",
    "surface_quality_report",
    "vtk_quality_report",
]
