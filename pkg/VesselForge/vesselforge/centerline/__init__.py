from vesselforge.centerline.editor import (
    apply_edit_ops,
    remove_branch,
    resample_branch,
    resample_network,
    rotate_branch,
    scale_radius,
    set_points,
)
from vesselforge.centerline.fixture_parser import FixtureParser, read_fixture, write_fixture
from vesselforge.centerline.io import load_centerline, save_centerline
from vesselforge.centerline.network import (
    CenterlineNetwork,
    extract_branches,
    network_density,
    point_density,
    polyline_length,
)
from vesselforge.centerline.swc_parser import SwcParser, parse_swc, serialize_swc
from vesselforge.centerline.types import Branch, CenterlinePoint
