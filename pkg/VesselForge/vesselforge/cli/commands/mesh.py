# -*- coding: utf-8 -*-
import argparse

from vesselforge.cli.commands.pipeline import PipelineCommand
from vesselforge.config import RunConfig
from vesselforge.utils.atomic import atomic_output_dir


class MeshCommand(PipelineCommand):
    """Model and mesh a network: surface, O-grid volume, quality and failure reports."""

    name = "mesh"
    help = "build surface and hexahedral volume meshes"
    accepts_model = True

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--surface-only", action="store_true", dest="surface_only",
                            help="skip the hexahedral volume")

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        state = self.build_model(args, config)
        self.build_mesh(state, config, surface_only=args.surface_only)
        self.assess(state)
        with atomic_output_dir(config.output) as staging:
            self.write_artifacts(staging, state, config)
            return self.finish(staging, state, args)
