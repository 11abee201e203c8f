# -*- coding: utf-8 -*-
import argparse
import time

from vesselforge.cli.commands.pipeline import PipelineCommand
from vesselforge.config import RunConfig
from vesselforge.deform import TargetSurface, project_surface_nodes, rebuild_volume_after_deform
from vesselforge.utils.atomic import atomic_output_dir


class DeformCommand(PipelineCommand):
    """Mesh a network, project its surface radially onto a target and rebuild the volume."""

    name = "deform"
    help = "deform a generated mesh onto a target surface (OBJ or STL)"
    accepts_model = True

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--target", "-t", required=True, help="target surface, OBJ or STL")
        parser.add_argument("--surface-only", action="store_true", dest="surface_only",
                            help="deform the surface without rebuilding the volume")

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        target = TargetSurface.load(args.target)
        state = self.build_model(args, config)
        self.build_mesh(state, config, surface_only=True)

        started = time.perf_counter()
        surface = project_surface_nodes(state.mesh.surface, target, config.max_miss_fraction, self.logger)
        state.mesh.surface = surface
        if not args.surface_only:
            state.mesh.volume = rebuild_volume_after_deform(surface, config.to_mesh_params())
        state.timings["deform"] = time.perf_counter() - started

        self.assess(state)
        with atomic_output_dir(config.output) as staging:
            self.write_artifacts(staging, state, config)
            return self.finish(staging, state, args)
