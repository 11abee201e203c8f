# -*- coding: utf-8 -*-
"""Scaled-Jacobian reports with per-branch verdicts."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from vesselforge.errors import MeshingError
from vesselforge.mesher.exporters import VTK_HEXAHEDRON, VTK_QUAD, read_vtk_cells
from vesselforge.mesher.ogrid import HexMesh
from vesselforge.mesher.surface import StructuredSurfaceMesh
from vesselforge.quality.jacobian import hex_quality, quad_quality
from vesselforge.utils.atomic import atomic_write_text

HISTOGRAM_BINS = 40
GOOD_THRESHOLD = 0.9
OK, FAILED = "ok", "failed"


@dataclass
class QualityReport:
    """Per-cell scaled Jacobians of one mesh and their summaries.

    A branch fails as soon as one of its cells scores below zero.
    """

    values: np.ndarray
    labels: List[str]
    degenerate: np.ndarray
    histogram: np.ndarray = field(default_factory=lambda: np.zeros(HISTOGRAM_BINS, dtype=np.int64))
    bin_edges: np.ndarray = field(default_factory=lambda: np.linspace(-1.0, 1.0, HISTOGRAM_BINS + 1))
    verdicts: Dict[str, str] = field(default_factory=dict)

    @property
    def cell_count(self) -> int:
        return len(self.values)

    @property
    def minimum(self) -> Optional[float]:
        return float(np.min(self.values)) if self.cell_count else None

    @property
    def mean(self) -> Optional[float]:
        return float(np.mean(self.values)) if self.cell_count else None

    @property
    def fraction_good(self) -> float:
        """Share of cells with a scaled Jacobian above 0.9."""
        return float(np.mean(self.values > GOOD_THRESHOLD)) if self.cell_count else 0.0

    @property
    def fraction_positive(self) -> float:
        return float(np.mean(self.values > 0.0)) if self.cell_count else 0.0

    @property
    def failed_branches(self) -> List[str]:
        return sorted(k for k, v in self.verdicts.items() if v == FAILED)

    def summary(self) -> Dict[str, Any]:
        return {
            "cells": self.cell_count,
            "min": self.minimum,
            "mean": self.mean,
            "fraction_above_0_9": self.fraction_good,
            "fraction_positive": self.fraction_positive,
            "degenerate": int(np.sum(self.degenerate)),
            "branches": len(self.verdicts),
            "failed_branches": self.failed_branches,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "summary": self.summary(),
            "histogram": {"edges": self.bin_edges.tolist(), "counts": self.histogram.tolist()},
            "verdicts": dict(sorted(self.verdicts.items())),
        }

    def histogram_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "lower": self.bin_edges[:-1],
            "upper": self.bin_edges[1:],
            "count": self.histogram,
        })

    def save_json(self, path: Union[str, Path]) -> None:
        atomic_write_text(path, json.dumps(self.to_dict(), indent=2) + "\n")

    def save_csv(self, path: Union[str, Path]) -> None:
        atomic_write_text(path, self.histogram_frame().to_csv(index=False, float_format="%.10g"))


def build_report(values: np.ndarray, labels: Sequence[str], degenerate: Optional[np.ndarray] = None) -> QualityReport:
    """Histogram over [-1, 1] and per-label verdicts of precomputed values."""
    values = np.asarray(values, dtype=float)
    degenerate = np.zeros(len(values), dtype=bool) if degenerate is None else np.asarray(degenerate, dtype=bool)
    edges = np.linspace(-1.0, 1.0, HISTOGRAM_BINS + 1)
    counts, _ = np.histogram(np.clip(values, -1.0, 1.0), bins=edges)
    verdicts: Dict[str, str] = {}
    for label, value in zip(labels, values):
        if value < 0.0:
            verdicts[label] = FAILED
        else:
            verdicts.setdefault(label, OK)
    return QualityReport(values, list(labels), degenerate, counts.astype(np.int64), edges, verdicts)


def quality_report(mesh: HexMesh) -> QualityReport:
    """Scaled-Jacobian report of every hexahedron, branches keyed ``"vessel:<id>"`` / ``"furcation:<id>"``."""
    values, degenerate = hex_quality(mesh.vertices, mesh.hexes)
    return build_report(values, mesh.branch_labels(), degenerate)


def surface_quality_report(surface: StructuredSurfaceMesh) -> QualityReport:
    quads, labels, kinds = surface.quads()
    values, degenerate = quad_quality(surface.nodes, quads)
    names = [f"{'furcation' if k else 'vessel'}:{l}" for l, k in zip(labels, kinds)]
    return build_report(values, names, degenerate)


def vtk_quality_report(path: Union[str, Path]) -> QualityReport:
    """Report of a legacy VTK file of hexahedra or quads.

    Cells are labelled from the ``branch_id`` and ``branch_kind`` cell
    arrays when present, otherwise all cells share the label ``"mesh"``.
    """
    data = read_vtk_cells(path)
    cells, types = data.get("cells"), data.get("cell_types")
    if cells is None or types is None or not len(cells):
        raise MeshingError("no cells", str(path))
    kinds = set(types.tolist())
    if kinds == {VTK_HEXAHEDRON}:
        values, degenerate = hex_quality(data["points"], cells)
    elif kinds == {VTK_QUAD}:
        values, degenerate = quad_quality(data["points"], cells)
    else:
        raise MeshingError("unsupported cell types", f"{sorted(kinds)} in {path}")
    if "branch_id" in data and "branch_kind" in data:
        labels = [
            f"{'furcation' if k == 1 else 'vessel'}:{int(i)}" for i, k in zip(data["branch_id"], data["branch_kind"])
        ]
    else:
        labels = ["mesh"] * len(values)
    return build_report(values, labels, degenerate)
