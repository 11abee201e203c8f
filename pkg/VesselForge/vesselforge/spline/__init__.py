from vesselforge.spline.bspline import (
    DEGREE,
    SplineD,
    Spline4,
    arc_length,
    arc_length_table,
    chord_length_parametrize,
    clamped_uniform_knots,
    collapse_duplicates,
    curvature,
    design_matrix,
    evaluate,
    greville_abscissae,
    length_to_u,
    project_point,
)
from vesselforge.spline.frames import perpendicular, rotation_minimizing_frames, signed_angle
from vesselforge.spline.projector import CurveProjector
