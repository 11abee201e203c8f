# -*- coding: utf-8 -*-
"""Legacy VTK and OBJ writers.

Numbers are written with ``{:.10g}`` and cells in mesh order, so the same
mesh always produces the same bytes.
"""

from pathlib import Path
from typing import Dict, List, Mapping, Optional, Union

import numpy as np

from vesselforge.mesher.ogrid import HexMesh
from vesselforge.mesher.surface import StructuredSurfaceMesh
from vesselforge.utils.atomic import atomic_write_text

VTK_QUAD, VTK_HEXAHEDRON = 9, 12
NUMBER = "{:.10g}"


def _points(vertices: np.ndarray) -> List[str]:
    return [" ".join(NUMBER.format(v) for v in row) for row in vertices]


def _cell_data(values: Mapping[str, np.ndarray]) -> List[str]:
    lines = []
    for name, data in values.items():
        data = np.asarray(data)
        if np.issubdtype(data.dtype, np.integer):
            lines += [f"SCALARS {name} int 1", "LOOKUP_TABLE default"]
            lines += [str(int(v)) for v in data]
        else:
            lines += [f"SCALARS {name} double 1", "LOOKUP_TABLE default"]
            lines += [NUMBER.format(float(v)) for v in data]
    return lines


def unstructured_grid_text(
    vertices: np.ndarray,
    cells: np.ndarray,
    cell_type: int,
    cell_data: Optional[Mapping[str, np.ndarray]] = None,
    title: str = "vesselforge mesh",
) -> str:
    """Legacy ASCII ``UNSTRUCTURED_GRID`` of one cell type."""
    cells = np.asarray(cells, dtype=np.int64)
    k = cells.shape[1]
    lines = ["# vtk DataFile Version 3.0", title, "ASCII", "DATASET UNSTRUCTURED_GRID"]
    lines.append(f"POINTS {len(vertices)} double")
    lines += _points(vertices)
    lines.append(f"CELLS {len(cells)} {len(cells) * (k + 1)}")
    lines += [f"{k} " + " ".join(str(int(i)) for i in cell) for cell in cells]
    lines.append(f"CELL_TYPES {len(cells)}")
    lines += [str(cell_type)] * len(cells)
    if cell_data and len(cells):
        lines.append(f"CELL_DATA {len(cells)}")
        lines += _cell_data(cell_data)
    return "\n".join(lines) + "\n"


def hex_cell_data(mesh: HexMesh, extra: Optional[Mapping[str, np.ndarray]] = None) -> Dict[str, np.ndarray]:
    data = {"branch_id": mesh.branch_id, "branch_kind": mesh.branch_kind, "layer": mesh.layer}
    data.update(extra or {})
    return data


def write_vtk_hex(path: Union[str, Path], mesh: HexMesh, extra: Optional[Mapping[str, np.ndarray]] = None) -> None:
    """Hexahedral volume with ``branch_id``, ``branch_kind``, ``layer`` and any ``extra`` cell arrays."""
    text = unstructured_grid_text(mesh.vertices, mesh.hexes, VTK_HEXAHEDRON, hex_cell_data(mesh, extra))
    atomic_write_text(path, text)


def write_vtk_quads(
    path: Union[str, Path], surface: StructuredSurfaceMesh, extra: Optional[Mapping[str, np.ndarray]] = None
) -> None:
    quads, labels, kinds = surface.quads()
    data = {"branch_id": labels, "branch_kind": kinds}
    data.update(extra or {})
    atomic_write_text(path, unstructured_grid_text(surface.nodes, quads, VTK_QUAD, data))


def obj_text(vertices: np.ndarray, faces: np.ndarray) -> str:
    lines = ["v " + row for row in _points(vertices)]
    lines += ["f " + " ".join(str(int(i) + 1) for i in face) for face in faces]
    return "\n".join(lines) + "\n"


def write_obj_quads(path: Union[str, Path], surface: StructuredSurfaceMesh) -> None:
    quads, _, _ = surface.quads()
    atomic_write_text(path, obj_text(surface.nodes, quads))


def read_vtk_cells(path: Union[str, Path]) -> Dict[str, np.ndarray]:
    """Points, cells, cell types and scalar cell data of a file written here."""
    tokens = Path(path).read_text(encoding="UTF-8").split("\n")
    out: Dict[str, np.ndarray] = {}
    i = 0
    while i < len(tokens):
        line = tokens[i].strip()
        if line.startswith("POINTS"):
            n = int(line.split()[1])
            out["points"] = np.array([[float(v) for v in tokens[i + 1 + j].split()] for j in range(n)]).reshape(n, 3)
            i += n
        elif line.startswith("CELLS"):
            n = int(line.split()[1])
            out["cells"] = np.array([[int(v) for v in tokens[i + 1 + j].split()[1:]] for j in range(n)], dtype=np.int64)
            i += n
        elif line.startswith("CELL_TYPES"):
            n = int(line.split()[1])
            out["cell_types"] = np.array([int(tokens[i + 1 + j]) for j in range(n)], dtype=np.int64)
            i += n
        elif line.startswith("CELL_DATA"):
            count = int(line.split()[1])
            j = i + 1
            while j < len(tokens) and tokens[j].startswith("SCALARS"):
                name, kind = tokens[j].split()[1:3]
                cast = int if kind == "int" else float
                out[name] = np.array([cast(v) for v in tokens[j + 2 : j + 2 + count]])
                j += 2 + count
            i = j
        i += 1
    return out
