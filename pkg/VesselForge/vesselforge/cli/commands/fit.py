# -*- coding: utf-8 -*-
import argparse

from vesselforge.cli.commands.pipeline import PipelineCommand
from vesselforge.config import RunConfig
from vesselforge.utils.atomic import atomic_output_dir


class FitCommand(PipelineCommand):
    """Fit vessel splines and furcation models, write ``model.json``."""

    name = "fit"
    help = "fit a network model to a centerline"

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        state = self.build_model(args, config)
        with atomic_output_dir(config.output) as staging:
            self.write_artifacts(staging, state, config)
            return self.finish(staging, state, args)
