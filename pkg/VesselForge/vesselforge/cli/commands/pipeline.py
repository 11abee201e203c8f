# -*- coding: utf-8 -*-
"""Steps shared by the model-building commands: input, modelling, meshing and reports."""

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from vesselforge.centerline import CenterlineNetwork, load_centerline, network_density, resample_network
from vesselforge.cli.basic_command import EXIT_OK, EXIT_PARTIAL, BasicCommand
from vesselforge.config import RunConfig
from vesselforge.errors import ConfigError
from vesselforge.mesher import NetworkMesh, mesh_network, write_obj_quads, write_vtk_hex, write_vtk_quads
from vesselforge.model import NetworkModel, assemble_network, load_network_model, save_network_model
from vesselforge.model.types import FailureRecord
from vesselforge.quality import QualityReport, quality_report, surface_quality_report
from vesselforge.utils.atomic import atomic_write_text

INVERTED = "inverted cells"


def write_json(path: Path, data: Any) -> None:
    atomic_write_text(path, json.dumps(data, indent=2, sort_keys=False) + "\n")


def percent(part: int, whole: int) -> float:
    return round(100.0 * part / whole, 2) if whole else 100.0


@dataclass
class RunState:
    """Everything a pipeline command produced so far."""

    net: Optional[CenterlineNetwork] = None
    model: Optional[NetworkModel] = None
    mesh: Optional[NetworkMesh] = None
    report: Optional[QualityReport] = None
    timings: Dict[str, float] = field(default_factory=dict)

    def failures(self) -> List[FailureRecord]:
        records = list(self.mesh.failures if self.mesh is not None else self.model.failures)
        if self.report is not None:
            for label in self.report.failed_branches:
                kind, _, index = label.partition(":")
                records.append(FailureRecord(kind, int(index), INVERTED, "negative scaled Jacobian"))
        return records

    def summary(self, command: str, source: str) -> Dict[str, Any]:
        """Counts, success percentages and wall-clock times of the run."""
        model = self.model
        failures = self.failures()
        failed = {kind: sorted({f.id for f in failures if f.kind == kind}) for kind in ("furcation", "vessel")}
        furcations = {"total": model.junction_count, "modeled": len(model.furcations), "failed": len(failed["furcation"])}
        vessels = {"total": model.branch_count, "modeled": len(model.vessels), "failed": len(failed["vessel"])}
        if self.mesh is not None:
            furcations["meshed"] = len(self.mesh.furcations)
            vessels["meshed"] = len(self.mesh.vessels)
        for block in (furcations, vessels):
            block["success_percent"] = percent(block["total"] - block["failed"], block["total"])
        data: Dict[str, Any] = {
            "command": command,
            "input": source,
            "data_points": model.point_count,
            "furcations": furcations,
            "vessels": vessels,
        }
        if self.net is not None and len(self.net):
            data["point_density"] = network_density(self.net)
        if self.mesh is not None:
            data["surface_quads"] = int(len(self.mesh.surface.quads()[0]))
            data["surface_nodes"] = self.mesh.surface.node_count
            if self.mesh.volume is not None:
                data["cells"] = self.mesh.volume.cell_count
                data["vertices"] = self.mesh.volume.vertex_count
            data["flagged_sections"] = {str(j): [list(f) for f in flags] for j, flags in self.mesh.flagged.items()}
        if self.report is not None:
            data["quality"] = self.report.summary()
        data["failures"] = [f.to_dict() for f in failures]
        data["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return data

    @property
    def exit_status(self) -> int:
        return EXIT_PARTIAL if self.failures() else EXIT_OK


class PipelineCommand(BasicCommand):
    """Command that reads a centerline (or a saved model) and builds a network model."""

    accepts_model = False

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        if self.accepts_model:
            parser.add_argument("--model", help="saved network model (model.json) to use instead of fitting --input")

    def build_model(self, args: argparse.Namespace, config: RunConfig) -> RunState:
        state = RunState()
        model_path = getattr(args, "model", None)
        if model_path:
            state.model = load_network_model(model_path)
            self.logger.info("loaded model %s: %d vessels, %d furcations",
                             model_path, len(state.model.vessels), len(state.model.furcations))
            return state
        if not args.input:
            raise ConfigError("--input is required" + (" (or --model)" if self.accepts_model else ""))
        started = time.perf_counter()
        net = load_centerline(args.input, self.logger)
        density = config.resample_density
        if density is not None:
            net = resample_network(net, density)
            self.logger.info("resampled every branch to %g points per mm", density)
        state.net = net
        state.model = assemble_network(
            net, config.to_fit_config(), config.to_model_options(), jobs=config.jobs, logger=self.logger
        )
        state.timings["modelling"] = time.perf_counter() - started
        return state

    def build_mesh(self, state: RunState, config: RunConfig, surface_only: bool = False) -> None:
        state.mesh = mesh_network(
            state.model, config.to_mesh_params(), jobs=config.jobs, surface_only=surface_only, logger=self.logger
        )
        state.timings.update({f"meshing_{k}": v for k, v in state.mesh.timings.items()})

    def assess(self, state: RunState) -> None:
        if state.mesh.volume is not None:
            state.report = quality_report(state.mesh.volume)
        else:
            state.report = surface_quality_report(state.mesh.surface)
        summary = state.report.summary()
        self.logger.info(
            "quality: %d cells, min %.4g, %.1f%% above 0.9",
            summary["cells"], summary["min"] if summary["min"] is not None else float("nan"),
            100.0 * summary["fraction_above_0_9"],
        )

    def write_artifacts(self, staging: Path, state: RunState, config: RunConfig) -> None:
        formats = config.formats
        mesh = state.mesh
        if mesh is not None:
            if "vtk" in formats:
                write_vtk_quads(staging / "surface.vtk", mesh.surface)
                if mesh.volume is not None:
                    extra = {"scaled_jacobian": state.report.values} if state.report is not None else None
                    write_vtk_hex(staging / "volume.vtk", mesh.volume, extra)
            if "obj" in formats:
                write_obj_quads(staging / "surface.obj", mesh.surface)
            if state.report is not None:
                state.report.save_json(staging / "quality.json")
                state.report.save_csv(staging / "quality_histogram.csv")
        if "json" in formats or mesh is None:
            save_network_model(state.model, staging / "model.json")
        write_json(staging / "failures.json", [f.to_dict() for f in state.failures()])
        write_json(staging / "config.json", config.resolved())

    def finish(self, staging: Path, state: RunState, args: argparse.Namespace) -> int:
        source = getattr(args, "model", None) or args.input or ""
        summary = state.summary(self.name, str(source))
        summary["exit_status"] = state.exit_status
        write_json(staging / "summary.json", summary)
        for record in state.failures():
            self.logger.warning("%s %d failed: %s", record.kind, record.id, record.reason)
        return state.exit_status
