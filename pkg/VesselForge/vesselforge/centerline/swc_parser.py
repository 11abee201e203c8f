# -*- coding: utf-8 -*-
"""Reader and writer of the swc centerline format."""

from pathlib import Path
from typing import Dict, List, Union

from vesselforge.centerline.basic_parser import BasicCenterlineParser, PathLike
from vesselforge.centerline.network import CenterlineNetwork
from vesselforge.centerline.types import CenterlinePoint
from vesselforge.errors import CenterlineFormatError
from vesselforge.utils.atomic import atomic_write_text

FLOAT_FORMAT = "{:.12g}"


def parse_swc(text: Union[bytes, str]) -> CenterlineNetwork:
    """Parse swc text ("id type x y z r parent" per line, ``#`` comments).

    Raises
    ------
    CenterlineFormatError
        With the offending line number for malformed rows, duplicate ids,
        nonpositive radii, dangling parents and cycles.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    points: List[CenterlinePoint] = []
    lines: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) < 7:
            raise CenterlineFormatError(f"expected 7 columns, got {len(fields)}", lineno)
        try:
            pid = int(fields[0])
            ptype = int(float(fields[1]))
            x, y, z, r = (float(v) for v in fields[2:6])
            parent = int(fields[6])
        except ValueError as e:
            raise CenterlineFormatError(f"unreadable value ({e})", lineno) from None
        if pid in lines:
            raise CenterlineFormatError(f"duplicate id {pid}", lineno)
        if not r > 0:
            raise CenterlineFormatError(f"nonpositive radius {r}", lineno)
        lines[pid] = lineno
        points.append(
            CenterlinePoint(
                id=pid,
                position=(x, y, z),
                radius=r,
                parent_id=None if parent < 0 else parent,
                type=ptype,
            )
        )
    return CenterlineNetwork(points, source_lines=lines)


def serialize_swc(net: CenterlineNetwork) -> str:
    """Serialize ``net`` to swc text; parents are written before children."""
    rows = ["# id type x y z r parent"]
    for point in net.points:
        values = " ".join(FLOAT_FORMAT.format(v) for v in (*point.position, point.radius))
        parent = -1 if point.parent_id is None else point.parent_id
        rows.append(f"{point.id} {point.type} {values} {parent}")
    return "\n".join(rows) + "\n"


class SwcParser(BasicCenterlineParser):
    name = "swc"

    def accepts(self, path: Path) -> bool:
        return path.suffix.lower() == ".swc"

    def load(self, path: PathLike) -> CenterlineNetwork:
        path = Path(path)
        net = parse_swc(path.read_bytes())
        self.logger.info(f"Loaded {len(net)} points from {path}")
        return net

    def dump(self, net: CenterlineNetwork, path: PathLike) -> None:
        atomic_write_text(path, serialize_swc(net))
