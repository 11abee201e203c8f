# -*- coding: utf-8 -*-
"""Tabular fixture format: one CSV per branch plus a JSON topology index.

``topology.json`` looks like::

    {"branches": [{"file": "branch_000.csv", "parent": null},
                  {"file": "branch_001.csv", "parent": 0}]}

A branch whose ``parent`` is set starts at the last row of that parent
branch; the shared row is stored in both files.
"""

import json
from pathlib import Path
from typing import Dict, List

import pandas as pd

from vesselforge.centerline.basic_parser import BasicCenterlineParser, PathLike
from vesselforge.centerline.network import CenterlineNetwork, extract_branches
from vesselforge.centerline.types import CenterlinePoint
from vesselforge.errors import CenterlineFormatError

TOPOLOGY_FILE = "topology.json"
COLUMNS = ["x", "y", "z", "r"]


def read_fixture(directory: PathLike) -> CenterlineNetwork:
    directory = Path(directory)
    index_path = directory / TOPOLOGY_FILE
    if not index_path.is_file():
        raise CenterlineFormatError(f"missing {TOPOLOGY_FILE} in {directory}")
    try:
        topology = json.loads(index_path.read_text(encoding="UTF-8"))
    except json.JSONDecodeError as e:
        raise CenterlineFormatError(f"invalid {TOPOLOGY_FILE}: {e.msg}", e.lineno) from None

    points: List[CenterlinePoint] = []
    last_id: Dict[int, int] = {}
    next_id = 1
    for index, entry in enumerate(topology.get("branches", [])):
        table = pd.read_csv(directory / entry["file"])
        missing = [c for c in COLUMNS if c not in table.columns]
        if missing:
            raise CenterlineFormatError(f"{entry['file']} lacks columns {missing}")
        rows = table[COLUMNS].to_numpy(dtype=float)
        parent_branch = entry.get("parent")
        if parent_branch is None:
            parent_id = None
        else:
            if parent_branch not in last_id:
                raise CenterlineFormatError(
                    f"branch {index} references unknown parent branch {parent_branch}"
                )
            parent_id = last_id[parent_branch]
            rows = rows[1:]
        for row in rows:
            points.append(
                CenterlinePoint(id=next_id, position=tuple(row[:3]), radius=row[3], parent_id=parent_id)
            )
            parent_id = next_id
            next_id += 1
        last_id[index] = parent_id
    return CenterlineNetwork(points)


def write_fixture(net: CenterlineNetwork, directory: PathLike) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    branches = extract_branches(net)
    ends = {b.end: b.index for b in branches}
    entries = []
    for branch in branches:
        name = f"branch_{branch.index:03d}.csv"
        table = pd.DataFrame(net.xyzr(branch.point_ids), columns=COLUMNS)
        table.to_csv(directory / name, index=False, float_format="%.12g")
        entries.append({"file": name, "parent": ends.get(branch.start)})
    (directory / TOPOLOGY_FILE).write_text(
        json.dumps({"branches": entries}, indent=2), encoding="UTF-8"
    )


class FixtureParser(BasicCenterlineParser):
    name = "fixture"

    def accepts(self, path: Path) -> bool:
        return path.is_dir() and (path / TOPOLOGY_FILE).is_file()

    def load(self, path: PathLike) -> CenterlineNetwork:
        net = read_fixture(path)
        self.logger.info(f"Loaded {len(net)} points from fixture {path}")
        return net

    def dump(self, net: CenterlineNetwork, path: PathLike) -> None:
        write_fixture(net, path)

