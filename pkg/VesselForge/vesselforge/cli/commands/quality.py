# -*- coding: utf-8 -*-
import argparse

from vesselforge.cli.basic_command import EXIT_OK, EXIT_PARTIAL, BasicCommand
from vesselforge.cli.commands.pipeline import write_json
from vesselforge.config import RunConfig
from vesselforge.errors import ConfigError
from vesselforge.quality import vtk_quality_report
from vesselforge.utils.atomic import atomic_output_dir


class QualityCommand(BasicCommand):
    """Scaled-Jacobian report of a VTK mesh written by ``mesh`` or ``deform``."""

    name = "quality"
    help = "report scaled Jacobian quality of a VTK mesh"

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        if not args.input:
            raise ConfigError("--input is required")
        report = vtk_quality_report(args.input)
        summary = report.summary()
        self.logger.info(
            "%s: %d cells, min %.4g, mean %.4g, %.1f%% above 0.9, %.1f%% positive",
            args.input, summary["cells"], summary["min"], summary["mean"],
            100.0 * summary["fraction_above_0_9"], 100.0 * summary["fraction_positive"],
        )
        for label in report.failed_branches:
            self.logger.warning("%s has inverted cells", label)
        with atomic_output_dir(config.output) as staging:
            report.save_json(staging / "quality.json")
            report.save_csv(staging / "quality_histogram.csv")
            write_json(staging / "summary.json", dict(command=self.name, input=str(args.input), quality=summary))
        return EXIT_PARTIAL if report.failed_branches else EXIT_OK
