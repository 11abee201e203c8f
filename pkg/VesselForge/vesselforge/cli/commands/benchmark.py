# -*- coding: utf-8 -*-
import argparse
import dataclasses
import time

from vesselforge.benchmark import GROUND_TRUTHS, run_benchmark
from vesselforge.benchmark.runner import strategy_ordering
from vesselforge.cli.basic_command import EXIT_OK, EXIT_PARTIAL, BasicCommand, name_list
from vesselforge.cli.commands.pipeline import write_json
from vesselforge.config import RunConfig
from vesselforge.errors import ConfigError
from vesselforge.utils.atomic import atomic_output_dir


class BenchmarkCommand(BasicCommand):
    """Fit distorted samples of analytic ground truths with every strategy and tabulate the errors."""

    name = "benchmark"
    help = "benchmark the fitting strategies on analytic ground truths"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--plot-data", action="store_true", dest="plot_data",
                            help="also write whitespace separated tables per strategy")
        parser.add_argument("--criteria", type=name_list, metavar="C[,C]",
                            help="rerun SRP_AIC with each smoothing criterion")
        parser.add_argument("--strategies", type=name_list, metavar="S[,S]", help="strategies to compare")
        parser.add_argument("--truths", type=name_list, metavar="NAME[,NAME]",
                            help=f"ground truths, any of {','.join(GROUND_TRUTHS)}")
        parser.add_argument("--repeats", type=int, help="distorted datasets per grid point")

    def overrides(self, args: argparse.Namespace):
        values = super().overrides(args)
        values["run.resample_density"] = None
        values.update({
            "benchmark.densities": args.density,
            "benchmark.criteria": args.criteria,
            "benchmark.strategies": args.strategies,
            "benchmark.repeats": args.repeats,
        })
        return values

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        grid = config.to_benchmark_grid()
        if args.truths:
            unknown = [t for t in args.truths if t not in GROUND_TRUTHS]
            if unknown:
                raise ConfigError(f"unknown ground truth(s) {unknown}, expected {list(GROUND_TRUTHS)}")
            grid = dataclasses.replace(grid, truths=tuple(args.truths))
        started = time.perf_counter()
        result = run_benchmark(grid, config.to_fit_config(), jobs=config.jobs, logger=self.logger)
        elapsed = time.perf_counter() - started

        summary = result.summary()
        for mode in [m.value for m in grid.modes]:
            for metric in ("RMSEcurv", "RMSEder_spatial"):
                order = strategy_ordering(summary, mode, metric)
                if order:
                    self.logger.info("%s, %s: %s", mode, metric, " < ".join(order))
        failed = int((result.table["status"] != "ok").sum()) if not result.table.empty else 0
        with atomic_output_dir(config.output) as staging:
            result.save(staging, plot_data=args.plot_data)
            write_json(staging / "summary.json", {
                "command": self.name,
                "datasets": len(grid.datasets()),
                "fits": int(len(result.table)),
                "failed_fits": failed,
                "timings": {"benchmark": round(elapsed, 6)},
            })
        return EXIT_PARTIAL if failed else EXIT_OK
